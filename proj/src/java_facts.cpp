// Fact extraction for a Java subset: type declarations with extends /
// implements clauses, fields, methods, constructors, parameters, locals,
// assignments, invocations and field accesses. Lambdas, anonymous classes
// and local classes are skipped.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "corename/facts.hpp"
#include "java_lexer.hpp"

namespace corename {

namespace {

using java::Token;
using java::TokenKind;

struct TypeName {
  std::string outer;
  std::vector<std::string> args;
};

// A body whose statements are analysed after the enclosing class is parsed.
struct PendingBody {
  EntityId scope = kNoEntity;
  EntityKind scope_kind = EntityKind::Method;
  std::string scope_name;
  std::vector<std::string> params;
  std::size_t begin = 0;
  std::size_t end = 0;
  // Field initializer: the assigned field.
  std::optional<std::string> field;
};

struct ClassContext {
  EntityId id = kNoEntity;
  std::set<std::string> fields;
  std::vector<PendingBody> bodies;
};

class SkipFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Extractor {
 public:
  Extractor(const SourceFile& file, std::vector<Token> tokens)
      : file_(file), toks_(std::move(tokens)) {}

  CodeFacts run() {
    check_balance();
    std::size_t i = 0;
    while (i < toks_.size()) {
      const Token& t = toks_[i];
      if (t.is("package") || t.is("import")) {
        i = find_top(i, ";") + 1;
      } else if (t.is(";")) {
        ++i;
      } else if (t.is("@") && !peek_is(i + 1, "interface")) {
        i = skip_annotation(i);
      } else if (t.ident() && java::is_modifier(t.text)) {
        ++i;
      } else if (starts_type_decl(i)) {
        i = parse_type_decl(i, kNoEntity);
      } else {
        throw SkipFile("unexpected '" + t.text + "' at line " + std::to_string(t.line));
      }
    }
    return std::move(facts_);
  }

 private:
  // ---- token helpers -------------------------------------------------------

  bool peek_is(std::size_t i, std::string_view s) const { return i < toks_.size() && toks_[i].is(s); }

  bool peek_ident(std::size_t i) const {
    return i < toks_.size() && toks_[i].ident() && !java::is_keyword(toks_[i].text);
  }

  void check_balance() const {
    std::vector<char> stack;
    for (const auto& t : toks_) {
      if (t.kind != TokenKind::Punct || t.text.size() != 1) continue;
      char c = t.text[0];
      if (c == '(' || c == '[' || c == '{') stack.push_back(c);
      if (c == ')' || c == ']' || c == '}') {
        char open = c == ')' ? '(' : c == ']' ? '[' : '{';
        if (stack.empty() || stack.back() != open) {
          throw SkipFile("unbalanced '" + t.text + "' at line " + std::to_string(t.line));
        }
        stack.pop_back();
      }
    }
    if (!stack.empty()) throw SkipFile("unclosed '" + std::string(1, stack.back()) + "'");
  }

  // Index of the bracket closing the one at `open`.
  std::size_t match(std::size_t open) const {
    const std::string& o = toks_[open].text;
    const std::string c = o == "(" ? ")" : o == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      if (toks_[i].is(o)) ++depth;
      else if (toks_[i].is(c) && --depth == 0) return i;
    }
    return toks_.size();
  }

  // Next occurrence of `s` at bracket depth 0 starting at i.
  std::size_t find_top(std::size_t i, std::string_view s) const {
    while (i < toks_.size() && !toks_[i].is(s)) {
      if (toks_[i].is("(") || toks_[i].is("[") || toks_[i].is("{")) i = match(i);
      ++i;
    }
    return i;
  }

  // End of an expression starting at i: the first depth-0 ',', ';', or
  // closing bracket, bounded by `limit`.
  std::size_t expression_end(std::size_t i, std::size_t limit) const {
    while (i < limit) {
      const Token& t = toks_[i];
      if (t.is("(") || t.is("[") || t.is("{")) {
        i = match(i) + 1;
        continue;
      }
      if (t.is(",") || t.is(";") || t.is(")") || t.is("]") || t.is("}")) return i;
      ++i;
    }
    return limit;
  }

  std::size_t skip_annotation(std::size_t i) const {
    ++i;  // '@'
    if (i < toks_.size() && toks_[i].ident()) ++i;
    while (peek_is(i, ".") && i + 1 < toks_.size() && toks_[i + 1].ident()) i += 2;
    if (peek_is(i, "(")) i = match(i) + 1;
    return i;
  }

  std::size_t skip_type_params(std::size_t i) const {
    if (!peek_is(i, "<")) return i;
    int depth = 0;
    for (; i < toks_.size(); ++i) {
      if (toks_[i].is("<")) ++depth;
      else if (toks_[i].is(">") && --depth == 0) return i + 1;
    }
    return i;
  }

  bool starts_type_decl(std::size_t i) const {
    if (peek_is(i, "@") && peek_is(i + 1, "interface")) return true;
    return peek_is(i, "class") || peek_is(i, "interface") || peek_is(i, "enum") ||
           (peek_is(i, "record") && peek_ident(i + 1) && peek_is(i + 2, "("));
  }

  // Parses a type starting at i; on success `i` is advanced past it.
  std::optional<TypeName> parse_type(std::size_t& i, bool collect_args = true) const {
    std::size_t j = i;
    while (peek_is(j, "@")) j = skip_annotation(j);
    if (j >= toks_.size() || !toks_[j].ident()) return std::nullopt;
    const std::string& first = toks_[j].text;
    if (java::is_keyword(first) && !java::is_primitive(first)) return std::nullopt;
    TypeName type;
    type.outer = first;
    ++j;
    bool outermost_args = true;
    while (true) {
      if (peek_is(j, "<")) {
        ++j;
        if (peek_is(j, ">")) {
          ++j;  // diamond
        } else {
          while (true) {
            while (peek_is(j, "@")) j = skip_annotation(j);
            if (peek_is(j, "?")) {
              ++j;
              if (peek_is(j, "extends") || peek_is(j, "super")) ++j;
              else if (peek_is(j, ",") || peek_is(j, ">")) {
                if (peek_is(j, ",")) { ++j; continue; }
                ++j;
                break;
              }
            }
            auto arg = parse_type(j, false);
            if (!arg) return std::nullopt;
            if (collect_args && outermost_args) type.args.push_back(arg->outer);
            if (peek_is(j, ",")) { ++j; continue; }
            if (peek_is(j, ">")) { ++j; break; }
            return std::nullopt;
          }
        }
        outermost_args = false;
        continue;
      }
      if (peek_is(j, ".") && j + 1 < toks_.size() && toks_[j + 1].ident() &&
          !java::is_keyword(toks_[j + 1].text)) {
        type.outer = toks_[j + 1].text;
        j += 2;
        continue;
      }
      break;
    }
    while (peek_is(j, "@")) j = skip_annotation(j);
    while (peek_is(j, "[") && peek_is(j + 1, "]")) j += 2;
    if (peek_is(j, "...")) ++j;
    i = j;
    return type;
  }

  // ---- fact helpers ----------------------------------------------------------

  EntityId add_entity(EntityKind kind, std::string name, EntityId container) {
    EntityId id = facts_.entities.size();
    facts_.entities.push_back({id, kind, std::move(name), container, file_.path});
    if (container != kNoEntity) facts_.contains.emplace_back(container, id);
    return id;
  }

  void add_type_rows(std::vector<NameRow>& table, EntityId id, const TypeName& type) {
    if (type.outer == "var" || type.outer == "void") return;
    table.push_back({id, type.outer});
    for (const auto& a : type.args) table.push_back({id, a});
  }

  // ---- declarations -------------------------------------------------------------

  std::size_t parse_type_decl(std::size_t i, EntityId container) {
    bool is_interface = false;
    bool is_enum = false;
    bool is_record = false;
    if (toks_[i].is("@")) {
      is_interface = true;
      i += 2;
    } else {
      is_interface = toks_[i].is("interface");
      is_enum = toks_[i].is("enum");
      is_record = toks_[i].is("record");
      ++i;
    }
    if (!peek_ident(i)) throw SkipFile("type declaration without a name");
    EntityId id = add_entity(is_interface ? EntityKind::Interface : EntityKind::Class,
                             toks_[i].text, container);
    ++i;
    i = skip_type_params(i);

    ClassContext ctx;
    ctx.id = id;
    if (is_record && peek_is(i, "(")) {
      std::size_t close = match(i);
      std::size_t j = i + 1;
      while (j < close) {
        auto type = parse_type(j);
        if (!type || !peek_ident(j)) break;
        EntityId f = add_entity(EntityKind::Attribute, toks_[j].text, id);
        add_type_rows(facts_.typed, f, *type);
        ctx.fields.insert(toks_[j].text);
        j = peek_is(j + 1, ",") ? j + 2 : j + 1;
      }
      i = close + 1;
    }

    while (i < toks_.size() && !toks_[i].is("{")) {
      if (toks_[i].is("extends") || toks_[i].is("implements")) {
        auto& table = toks_[i].is("implements") ? facts_.implements : facts_.extends;
        ++i;
        while (true) {
          auto type = parse_type(i, false);
          if (!type) break;
          table.push_back({id, type->outer});
          if (!peek_is(i, ",")) break;
          ++i;
        }
      } else {
        ++i;
      }
    }
    if (i >= toks_.size()) throw SkipFile("type declaration without a body");
    std::size_t close = match(i);
    parse_class_body(i + 1, close, ctx, is_enum);
    for (const auto& body : ctx.bodies) analyze_body(body, ctx);
    return close + 1;
  }

  void parse_class_body(std::size_t i, std::size_t end, ClassContext& ctx, bool is_enum) {
    if (is_enum) {
      while (i < end) {
        while (peek_is(i, "@")) i = skip_annotation(i);
        if (peek_is(i, ";")) {
          ++i;
          break;
        }
        if (!peek_ident(i)) break;
        add_entity(EntityKind::Attribute, toks_[i].text, ctx.id);
        ctx.fields.insert(toks_[i].text);
        ++i;
        if (peek_is(i, "(")) i = match(i) + 1;
        if (peek_is(i, "{")) i = match(i) + 1;
        if (peek_is(i, ",")) ++i;
      }
    }

    while (i < end) {
      const Token& t = toks_[i];
      if (t.is(";")) {
        ++i;
      } else if (t.is("@") && !peek_is(i + 1, "interface")) {
        i = skip_annotation(i);
      } else if (t.ident() && java::is_modifier(t.text)) {
        ++i;
      } else if (t.is("non") && peek_is(i + 1, "-")) {
        i += 3;  // non-sealed
      } else if (starts_type_decl(i)) {
        i = parse_type_decl(i, ctx.id);
      } else if (t.is("{")) {
        std::size_t close = match(i);
        ctx.bodies.push_back({ctx.id, EntityKind::Class, "", {}, i + 1, close, std::nullopt});
        i = close + 1;
      } else if (t.is("<")) {
        i = skip_type_params(i);
      } else if (peek_ident(i) && peek_is(i + 1, "(")) {
        i = parse_method(i, ctx, std::nullopt);
      } else {
        std::size_t j = i;
        auto type = parse_type(j);
        if (!type || !peek_ident(j)) {
          i = recover(i, end);
          continue;
        }
        if (peek_is(j + 1, "(")) i = parse_method(j, ctx, type);
        else i = parse_fields(j, end, ctx, *type);
      }
    }
  }

  // Skips a member we cannot read: up to the next ';' or past a '{...}' block.
  std::size_t recover(std::size_t i, std::size_t end) const {
    while (i < end) {
      if (toks_[i].is(";")) return i + 1;
      if (toks_[i].is("{")) return match(i) + 1;
      if (toks_[i].is("(") || toks_[i].is("[")) {
        i = match(i) + 1;
        continue;
      }
      ++i;
    }
    return end;
  }

  std::size_t parse_method(std::size_t name_at, ClassContext& ctx,
                           const std::optional<TypeName>& return_type) {
    const bool constructor = !return_type.has_value();
    EntityId id = add_entity(constructor ? EntityKind::Constructor : EntityKind::Method,
                             toks_[name_at].text, ctx.id);
    if (return_type) add_type_rows(facts_.returns, id, *return_type);

    std::size_t open = name_at + 1;
    std::size_t close = match(open);
    std::vector<std::string> params;
    std::size_t j = open + 1;
    while (j < close) {
      while (peek_is(j, "@")) j = skip_annotation(j);
      if (peek_is(j, "final")) ++j;
      auto type = parse_type(j);
      if (!type) break;
      if (peek_is(j, "this")) {  // receiver parameter
        j += 1;
      } else if (peek_ident(j)) {
        EntityId p = add_entity(EntityKind::Parameter, toks_[j].text, id);
        add_type_rows(facts_.typed, p, *type);
        params.push_back(toks_[j].text);
        ++j;
        while (peek_is(j, "[") && peek_is(j + 1, "]")) j += 2;
      }
      if (!peek_is(j, ",")) break;
      ++j;
    }

    std::size_t i = close + 1;
    while (i < toks_.size() && !toks_[i].is("{") && !toks_[i].is(";")) {
      if (toks_[i].is("(")) i = match(i);
      ++i;
    }
    if (peek_is(i, "{")) {
      std::size_t body_close = match(i);
      ctx.bodies.push_back({id, constructor ? EntityKind::Constructor : EntityKind::Method,
                            toks_[name_at].text, std::move(params), i + 1, body_close, std::nullopt});
      return body_close + 1;
    }
    return i + 1;
  }

  std::size_t parse_fields(std::size_t j, std::size_t end, ClassContext& ctx, const TypeName& type) {
    while (j < end && peek_ident(j)) {
      const std::string name = toks_[j].text;
      EntityId f = add_entity(EntityKind::Attribute, name, ctx.id);
      add_type_rows(facts_.typed, f, type);
      ctx.fields.insert(name);
      ++j;
      while (peek_is(j, "[") && peek_is(j + 1, "]")) j += 2;
      if (peek_is(j, "=")) {
        std::size_t init_end = expression_end(j + 1, end);
        ctx.bodies.push_back({ctx.id, EntityKind::Class, "", {}, j + 1, init_end, name});
        j = init_end;
      }
      if (peek_is(j, ",")) {
        ++j;
        continue;
      }
      break;
    }
    if (peek_is(j, ";")) return j + 1;
    return recover(j, end);
  }

  // ---- statement bodies -------------------------------------------------------------

  class BodyScan {
   public:
    BodyScan(Extractor& x, const PendingBody& body, const ClassContext& ctx)
        : x_(x), toks_(x.toks_), body_(body), ctx_(ctx) {
      scopes_.emplace_back();
    }

    void run() {
      if (body_.field) {
        record_assign(*body_.field, body_.begin, body_.end);
      }
      scan(body_.begin, body_.end);
    }

   private:
    bool is(std::size_t i, std::string_view s) const { return i < toks_.size() && toks_[i].is(s); }

    bool is_local(const std::string& name) const {
      for (const auto& scope : scopes_) {
        if (scope.contains(name)) return true;
      }
      return false;
    }

    bool is_param(const std::string& name) const {
      return std::find(body_.params.begin(), body_.params.end(), name) != body_.params.end();
    }

    ValueForm resolve(const std::string& name) const {
      if (is_local(name)) return ValueForm::Variable;
      if (is_param(name)) return ValueForm::Parameter;
      return ValueForm::Attribute;
    }

    EntityId container() const { return body_.scope; }

    bool statement_start(std::size_t i) const {
      if (i == body_.begin) return true;
      const Token& prev = toks_[i - 1];
      if (prev.is(";") || prev.is("{") || prev.is("}") || prev.is(":")) return true;
      if (prev.is("(") && i >= 2 && (toks_[i - 2].is("for") || toks_[i - 2].is("try"))) return true;
      return false;
    }

    // Classifies the value of an expression, if it is a name, a field
    // access or an invocation chain.
    std::optional<CallArgument> analyze_value(std::size_t b, std::size_t e) const {
      while (b < e) {
        if (toks_[b].is("(") && x_.match(b) == e - 1) {
          ++b;
          --e;
          continue;
        }
        if (toks_[b].is("(")) {
          std::size_t j = b + 1;
          auto cast = x_.parse_type(j, false);
          if (cast && is(j, ")") && j + 1 < e) {
            b = j + 1;
            continue;
          }
        }
        break;
      }
      if (b >= e) return std::nullopt;
      if (e - b == 3 && toks_[b].is("this") && toks_[b + 1].is(".") && x_.peek_ident(b + 2)) {
        return CallArgument{toks_[b + 2].text, ValueForm::Attribute};
      }

      enum class Last { Name, Call, Field, Index } last = Last::Name;
      std::string last_name;
      bool qualified = false;
      std::size_t j = b;
      if (toks_[j].is("this") || toks_[j].is("super")) {
        if (!is(j + 1, ".")) return std::nullopt;
        qualified = true;
        ++j;
        last = Last::Field;
      } else if (x_.peek_ident(j)) {
        last_name = toks_[j].text;
        ++j;
        if (j < e && toks_[j].is("(")) {
          last = Last::Call;
          j = x_.match(j) + 1;
        }
      } else {
        return std::nullopt;
      }
      while (j < e) {
        if (toks_[j].is(".")) {
          ++j;
          if (is(j, "<")) j = x_.skip_type_params(j);
          if (j >= e || !x_.peek_ident(j)) return std::nullopt;
          last_name = toks_[j].text;
          qualified = true;
          ++j;
          if (j < e && toks_[j].is("(")) {
            last = Last::Call;
            j = x_.match(j) + 1;
          } else {
            last = Last::Field;
          }
        } else if (toks_[j].is("[")) {
          j = x_.match(j) + 1;
          if (last == Last::Call) return std::nullopt;
          last = Last::Index;
        } else {
          return std::nullopt;
        }
      }
      if (j != e || last_name.empty()) return std::nullopt;
      switch (last) {
        case Last::Call: return CallArgument{last_name, ValueForm::Invocation};
        case Last::Field: return CallArgument{last_name, ValueForm::Attribute};
        case Last::Name:
        case Last::Index:
          return CallArgument{last_name, qualified ? ValueForm::Attribute : resolve(last_name)};
      }
      return std::nullopt;
    }

    void record_assign(const std::string& lhs, std::size_t b, std::size_t e) {
      if (auto value = analyze_value(b, e)) {
        x_.assigns_.insert({lhs, value->name, value->form, container()});
      }
    }

    void declare(const std::string& name, const TypeName& type) {
      EntityId v = x_.add_entity(EntityKind::Variable, name, container());
      x_.add_type_rows(x_.facts_.typed, v, type);
      scopes_.back().insert(name);
    }

    // Local variable declaration at a statement start; returns the index
    // to continue scanning from, or nullopt when this is not a declaration.
    std::optional<std::size_t> try_declaration(std::size_t i, std::size_t end) {
      std::size_t j = i;
      while (is(j, "@")) j = x_.skip_annotation(j);
      while (is(j, "final")) ++j;
      auto type = x_.parse_type(j);
      if (!type || j >= end || !x_.peek_ident(j)) return std::nullopt;
      if (!(is(j + 1, "=") || is(j + 1, ";") || is(j + 1, ",") || is(j + 1, ":") ||
            is(j + 1, "[") || is(j + 1, ")"))) {
        return std::nullopt;
      }
      while (j < end && x_.peek_ident(j)) {
        const std::string name = toks_[j].text;
        declare(name, *type);
        ++j;
        while (is(j, "[") && is(j + 1, "]")) j += 2;
        if (is(j, "=")) {
          std::size_t init_end = x_.expression_end(j + 1, end);
          record_assign(name, j + 1, init_end);
          scan(j + 1, init_end);
          j = init_end;
        }
        if (is(j, ",") && x_.peek_ident(j + 1)) {
          ++j;
          continue;
        }
        break;
      }
      return j;
    }

    std::size_t skip_lambda(std::size_t i, std::size_t end) const {
      if (is(i, "{")) return x_.match(i) + 1;
      return x_.expression_end(i, end);
    }

    void record_call(std::size_t name_at, std::size_t end) {
      const std::string& callee = toks_[name_at].text;
      if (body_.scope_kind == EntityKind::Method && callee != body_.scope_name) {
        x_.invokes_.insert({container(), callee});
      }
      CallRow call;
      call.caller = container();
      call.callee = callee;
      std::size_t open = name_at + 1;
      std::size_t close = std::min(x_.match(open), end);
      std::size_t a = open + 1;
      while (a < close) {
        std::size_t arg_end = x_.expression_end(a, close);
        auto value = analyze_value(a, arg_end);
        if (value && value->form == ValueForm::Parameter) value->form = ValueForm::Variable;
        call.args.push_back(value);
        a = arg_end + 1;
      }
      x_.facts_.calls.push_back(std::move(call));
    }

    void maybe_access(std::size_t i) {
      if (body_.scope_kind != EntityKind::Method) return;
      const std::string& name = toks_[i].text;
      if (!ctx_.fields.contains(name)) return;
      bool via_this = i >= 2 && toks_[i - 1].is(".") && toks_[i - 2].is("this");
      if (!via_this) {
        if (i > body_.begin && toks_[i - 1].is(".")) return;
        if (is_local(name) || is_param(name)) return;
      }
      x_.accesses_.insert({container(), name});
    }

    void scan(std::size_t i, std::size_t end) {
      bool case_label = false;
      while (i < end) {
        const Token& t = toks_[i];
        if (t.is("{")) {
          scopes_.emplace_back();
          if (pending_catch_) {
            scopes_.back().insert(*pending_catch_);
            pending_catch_.reset();
          }
          ++i;
          continue;
        }
        if (t.is("}")) {
          if (scopes_.size() > 1) scopes_.pop_back();
          ++i;
          continue;
        }
        if (t.is("case") || t.is("default")) case_label = true;
        if (t.is(":")) case_label = false;
        if (t.is("->")) {
          if (case_label) {
            case_label = false;
            ++i;
          } else {
            i = skip_lambda(i + 1, end);
          }
          continue;
        }
        if (t.is("class") || t.is("interface") || t.is("enum")) {
          std::size_t j = i;
          while (j < end && !toks_[j].is("{")) ++j;
          i = j < end ? x_.match(j) + 1 : end;
          continue;
        }
        if (t.is("new")) {
          std::size_t j = i + 1;
          x_.parse_type(j, false);
          if (is(j, "(")) {
            std::size_t close = x_.match(j);
            scan(j + 1, close);
            j = close + 1;
            if (is(j, "{")) j = x_.match(j) + 1;  // anonymous class
          }
          i = std::max(j, i + 1);
          continue;
        }
        if (t.is("catch") && is(i + 1, "(")) {
          std::size_t close = x_.match(i + 1);
          std::size_t j = i + 2;
          while (is(j, "final")) ++j;
          std::vector<TypeName> types;
          while (auto type = x_.parse_type(j, false)) {
            types.push_back(*type);
            if (!is(j, "|")) break;
            ++j;
          }
          if (x_.peek_ident(j) && !types.empty()) {
            EntityId v = x_.add_entity(EntityKind::Variable, toks_[j].text, container());
            for (const auto& type : types) x_.add_type_rows(x_.facts_.typed, v, type);
            pending_catch_ = toks_[j].text;
          }
          i = close + 1;
          continue;
        }
        if (statement_start(i) && (t.ident() || t.is("@")) && !t.is("return") &&
            !t.is("throw") && !t.is("yield") && !t.is("case")) {
          if (auto next = try_declaration(i, end)) {
            i = *next;
            continue;
          }
        }
        if (t.is("@")) {
          i = x_.skip_annotation(i);
          continue;
        }
        if (t.is("=")) {
          std::size_t lhs = i - 1;
          if (i > body_.begin && toks_[lhs].is("]")) {
            int depth = 0;
            while (lhs > body_.begin) {
              if (toks_[lhs].is("]")) ++depth;
              else if (toks_[lhs].is("[") && --depth == 0) break;
              --lhs;
            }
            --lhs;
          }
          if (lhs >= body_.begin && lhs < i && x_.peek_ident(lhs)) {
            record_assign(toks_[lhs].text, i + 1, x_.expression_end(i + 1, end));
          }
          ++i;
          continue;
        }
        if (x_.peek_ident(i)) {
          if (is(i + 1, "(") && !(i > body_.begin && toks_[i - 1].is("::"))) {
            record_call(i, end);
          } else if (!is(i + 1, "->")) {
            maybe_access(i);
          }
        }
        ++i;
      }
    }

    Extractor& x_;
    const std::vector<Token>& toks_;
    const PendingBody& body_;
    const ClassContext& ctx_;
    std::vector<std::set<std::string>> scopes_;
    std::optional<std::string> pending_catch_;
  };

  void analyze_body(const PendingBody& body, const ClassContext& ctx) {
    BodyScan scan(*this, body, ctx);
    scan.run();
    flush_rows();
  }

  void flush_rows() {
    for (const auto& [entity, name] : invokes_) facts_.invokes.push_back({entity, name});
    for (const auto& [entity, name] : accesses_) facts_.accesses.push_back({entity, name});
    for (const auto& [lhs, rhs, form, scope] : assigns_) facts_.assigns.push_back({lhs, rhs, form, scope});
    invokes_.clear();
    accesses_.clear();
    assigns_.clear();
  }

  const SourceFile& file_;
  std::vector<Token> toks_;
  CodeFacts facts_;
  std::set<std::pair<EntityId, std::string>> invokes_;
  std::set<std::pair<EntityId, std::string>> accesses_;
  std::set<std::tuple<std::string, std::string, ValueForm, EntityId>> assigns_;
};

}  // namespace

CodeFacts extract_file_facts(const SourceFile& file) {
  try {
    Extractor extractor(file, java::tokenize(file.content));
    return extractor.run();
  } catch (const java::LexError& e) {
    CodeFacts facts;
    facts.skipped.push_back({file.path, e.what()});
    return facts;
  } catch (const SkipFile& e) {
    CodeFacts facts;
    facts.skipped.push_back({file.path, e.what()});
    return facts;
  }
}

}  // namespace corename
