#pragma once

#include <string_view>

// Data files compiled into the library (see cmake/bundled_data.cpp.in).
namespace corename::bundled {

extern const std::string_view lemma_exceptions;
extern const std::string_view default_profile;

}  // namespace corename::bundled
