#pragma once

#include <array>
#include <string_view>

namespace corename {

/// The five renamed-identifier kinds reported by refactoring detectors.
enum class IdentifierKind { Class, Method, Attribute, Parameter, Variable };

inline constexpr std::array<IdentifierKind, 5> kAllIdentifierKinds = {
    IdentifierKind::Class, IdentifierKind::Method, IdentifierKind::Attribute,
    IdentifierKind::Parameter, IdentifierKind::Variable};

std::string_view to_string(IdentifierKind kind);
/// Throws Error(UnknownKind) for anything outside the five kinds.
IdentifierKind identifier_kind_from_string(std::string_view text);

}  // namespace corename
