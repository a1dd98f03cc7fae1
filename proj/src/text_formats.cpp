#include "causal_econ/text_formats.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace causal_econ {

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::forward: return "forward";
    case Orientation::backward: return "backward";
    case Orientation::blank: return "blank";
  }
  return "blank";
}

std::string_view to_string(ClaimedPolarity p) {
  switch (p) {
    case ClaimedPolarity::positive: return "positive";
    case ClaimedPolarity::negative: return "negative";
    case ClaimedPolarity::blank: return "blank";
  }
  return "blank";
}

std::string format_diagnostic(const ParseDiagnostic& d, std::string_view file) {
  std::ostringstream os;
  if (!file.empty()) os << file << ':';
  os << d.span.line << ':' << d.span.column << ": "
     << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexing

enum class Tok { word, string, value, arrow, dashes, colon, plus, minus, question, bad };

struct Token {
  Tok kind;
  std::string text;  // decoded text for strings and values
  int column;
  int length;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), is_word_char);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

class Lexer {
 public:
  explicit Lexer(std::vector<ParseDiagnostic>& diags) : diags_(diags) {}

  std::vector<Line> split(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      Line line{++number, tokenize(raw, number)};
      if (!line.tokens.empty()) lines.push_back(std::move(line));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return lines;
  }

 private:
  std::vector<Token> tokenize(std::string_view s, int line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
    while (i < s.size()) {
      const char c = s[i];
      if (is_space(c)) {
        ++i;
      } else if (c == '#') {
        break;
      } else if (c == '"') {
        const auto start = i;
        std::string value;
        if (!read_string(s, i, value)) {
          diags_.push_back({Severity::error, ErrorCode::parse_error, "unterminated string",
                            {line, col(start), static_cast<int>(s.size() - start)}});
          out.push_back({Tok::bad, {}, col(start), static_cast<int>(s.size() - start)});
          break;
        }
        out.push_back({Tok::string, std::move(value), col(start), static_cast<int>(i - start)});
      } else if (s.substr(i, 2) == "->") {
        out.push_back({Tok::arrow, "->", col(i), 2});
        i += 2;
      } else if (s.substr(i, 2) == "--") {
        out.push_back({Tok::dashes, "--", col(i), 2});
        i += 2;
      } else if (c == ':' || c == '+' || c == '-' || c == '?') {
        const Tok kind = c == ':' ? Tok::colon : c == '+' ? Tok::plus : c == '-' ? Tok::minus : Tok::question;
        out.push_back({kind, std::string(1, c), col(i), 1});
        ++i;
      } else if (is_word_char(c)) {
        const auto start = i;
        while (i < s.size() && is_word_char(s[i])) ++i;
        out.push_back({Tok::word, std::string(s.substr(start, i - start)), col(start),
                       static_cast<int>(i - start)});
        if (i < s.size() && s[i] == '=') read_attribute_value(s, i, line, out);
      } else {
        const auto start = i;
        while (i < s.size() && !is_space(s[i]) && s[i] != '#') ++i;
        out.push_back({Tok::bad, std::string(s.substr(start, i - start)), col(start),
                       static_cast<int>(i - start)});
      }
    }
    return out;
  }

  // After "key": '=' followed by a bare run or a quoted string.
  void read_attribute_value(std::string_view s, std::size_t& i, int line, std::vector<Token>& out) {
    const auto start = i++;
    std::string value;
    if (i < s.size() && s[i] == '"') {
      if (!read_string(s, i, value)) {
        diags_.push_back({Severity::error, ErrorCode::parse_error, "unterminated string",
                          {line, static_cast<int>(start) + 1, static_cast<int>(s.size() - start)}});
        out.push_back({Tok::bad, {}, static_cast<int>(start) + 1, static_cast<int>(s.size() - start)});
        i = s.size();
        return;
      }
    } else {
      while (i < s.size() && !is_space(s[i]) && s[i] != '"' && s[i] != '#') value += s[i++];
    }
    out.push_back({Tok::value, std::move(value), static_cast<int>(start) + 1,
                   static_cast<int>(i - start)});
  }

  static bool read_string(std::string_view s, std::size_t& i, std::string& value) {
    ++i;  // opening quote
    while (i < s.size()) {
      const char c = s[i++];
      if (c == '"') return true;
      if (c == '\\' && i < s.size()) {
        const char e = s[i++];
        value += e == 'n' ? '\n' : e == 't' ? '\t' : e == 'r' ? '\r' : e;
      } else {
        value += c;
      }
    }
    return false;
  }

  std::vector<ParseDiagnostic>& diags_;
};

// ---------------------------------------------------------------------------
// Shared line grammar

struct Located {
  std::string text;
  SourceSpan span;
};

struct ParsedVar {
  Variable var;
  SourceSpan id_span;
  std::optional<SourceSpan> symbol_span;
};

struct ParsedPair {
  Located a;
  Located b;
  Tok arrow;
  std::optional<Tok> sign;
  SourceSpan sign_span;
  int line;
};

class LineParser {
 public:
  explicit LineParser(std::vector<ParseDiagnostic>& diags) : diags_(diags) {}

  void error(const SourceSpan& span, std::string message, ErrorCode code = ErrorCode::parse_error) {
    diags_.push_back({Severity::error, code, std::move(message), span});
  }

  void warning(const SourceSpan& span, std::string message) {
    diags_.push_back({Severity::warning, ErrorCode::parse_error, std::move(message), span});
  }

  static SourceSpan span_of(const Line& l, const Token& t) {
    return {l.number, t.column, std::max(1, t.length)};
  }

  static SourceSpan span_after(const Line& l) {
    const auto& t = l.tokens.back();
    return {l.number, t.column + t.length, 1};
  }

  // <keyword> <name>
  std::optional<std::string> header(const Line& l, std::string_view keyword) {
    const auto& t = l.tokens;
    if (t.size() < 2) {
      error(span_after(l), "expected a name after '" + std::string(keyword) + "'");
      return std::nullopt;
    }
    if (t[1].kind != Tok::word && t[1].kind != Tok::string) {
      error(span_of(l, t[1]), "expected a name after '" + std::string(keyword) + "'");
      return std::nullopt;
    }
    if (t.size() > 2) {
      error(span_of(l, t[2]), "unexpected text after header");
      return std::nullopt;
    }
    return t[1].text;
  }

  // var <id> "<label>" [symbol=<sym>] [group=<tag>]
  std::optional<ParsedVar> variable(const Line& l) {
    const auto& t = l.tokens;
    if (t.size() < 2 || t[1].kind != Tok::word || !is_identifier(t[1].text)) {
      error(t.size() < 2 ? span_after(l) : span_of(l, t[1]), "expected a variable id after 'var'");
      return std::nullopt;
    }
    if (t.size() < 3 || t[2].kind != Tok::string) {
      error(t.size() < 3 ? span_after(l) : span_of(l, t[2]), "expected a quoted label");
      return std::nullopt;
    }
    ParsedVar pv{{t[1].text, t[2].text, std::nullopt, std::nullopt}, span_of(l, t[1]), std::nullopt};
    std::size_t i = 3;
    while (i < t.size()) {
      if (t[i].kind != Tok::word || i + 1 >= t.size() || t[i + 1].kind != Tok::value) {
        error(span_of(l, t[i]), "expected symbol=<value> or group=<value>");
        return std::nullopt;
      }
      if (t[i].text != "symbol" && t[i].text != "group") {
        error(span_of(l, t[i]), "unknown attribute '" + t[i].text + "'");
        return std::nullopt;
      }
      auto& slot = t[i].text == "symbol" ? pv.var.symbol : pv.var.group;
      if (slot) {
        error(span_of(l, t[i]), "attribute '" + t[i].text + "' given twice");
        return std::nullopt;
      }
      if (t[i + 1].text.empty()) {
        error(span_of(l, t[i + 1]), "empty attribute value");
        return std::nullopt;
      }
      slot = t[i + 1].text;
      if (t[i].text == "symbol") pv.symbol_span = span_of(l, t[i + 1]);
      i += 2;
    }
    return pv;
  }

  // <id> (->|--) <id> [: sign]
  std::optional<ParsedPair> pair(const Line& l, bool sign_required, bool sign_allowed,
                                 bool question_allowed) {
    const auto& t = l.tokens;
    if (t[0].kind != Tok::word || !is_identifier(t[0].text)) {
      error(span_of(l, t[0]), "expected a variable id");
      return std::nullopt;
    }
    if (t.size() < 2 || (t[1].kind != Tok::arrow && t[1].kind != Tok::dashes)) {
      error(t.size() < 2 ? span_after(l) : span_of(l, t[1]), "expected '->' or '--'");
      return std::nullopt;
    }
    if (t.size() < 3 || t[2].kind != Tok::word || !is_identifier(t[2].text)) {
      error(t.size() < 3 ? span_after(l) : span_of(l, t[2]), "expected a variable id");
      return std::nullopt;
    }
    ParsedPair p{{t[0].text, span_of(l, t[0])}, {t[2].text, span_of(l, t[2])}, t[1].kind,
                 std::nullopt, {}, l.number};
    if (t.size() == 3) {
      if (sign_required) {
        error(span_after(l), "expected ': +' or ': -'");
        return std::nullopt;
      }
      return p;
    }
    if (!sign_allowed) {
      error(span_of(l, t[3]), "unexpected text after link");
      return std::nullopt;
    }
    if (t[3].kind != Tok::colon) {
      error(span_of(l, t[3]), "expected ':'");
      return std::nullopt;
    }
    const bool sign_ok = t.size() > 4 && (t[4].kind == Tok::plus || t[4].kind == Tok::minus ||
                                          (question_allowed && t[4].kind == Tok::question));
    if (!sign_ok) {
      error(t.size() > 4 ? span_of(l, t[4]) : span_after(l),
            question_allowed ? "expected '+', '-' or '?'" : "expected '+' or '-'");
      return std::nullopt;
    }
    if (t.size() > 5) {
      error(span_of(l, t[5]), "unexpected text after polarity");
      return std::nullopt;
    }
    p.sign = t[4].kind;
    p.sign_span = span_of(l, t[4]);
    return p;
  }

 private:
  std::vector<ParseDiagnostic>& diags_;
};

bool has_errors(const std::vector<ParseDiagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const auto& d) { return d.severity == Severity::error; });
}

bool is_pair_line(const Line& l) {
  return l.tokens.size() >= 2 && (l.tokens[1].kind == Tok::arrow || l.tokens[1].kind == Tok::dashes);
}

bool starts_with_keyword(const Line& l, std::string_view kw) {
  return l.tokens[0].kind == Tok::word && l.tokens[0].text == kw && !is_pair_line(l);
}

// Header + var lines + pair lines. Shared by diagrams and skeletons.
struct GraphSource {
  std::optional<std::string> name;
  std::vector<ParsedVar> vars;
  std::vector<ParsedPair> pairs;
};

GraphSource parse_graph_lines(const std::vector<Line>& lines, std::string_view keyword,
                              bool directed, LineParser& p) {
  GraphSource src;
  bool header_seen = false;
  for (const auto& l : lines) {
    if (starts_with_keyword(l, keyword)) {
      if (header_seen) {
        p.error(LineParser::span_of(l, l.tokens[0]), "duplicate '" + std::string(keyword) + "' header");
        continue;
      }
      header_seen = true;
      src.name = p.header(l, keyword);
      if (!src.name) src.name = std::string();
      continue;
    }
    if (!header_seen) {
      p.error(LineParser::span_of(l, l.tokens[0]),
              "expected '" + std::string(keyword) + " <name>' header before this line");
      header_seen = true;  // report once
      src.name = std::string();
    }
    if (starts_with_keyword(l, "var")) {
      if (auto v = p.variable(l)) src.vars.push_back(std::move(*v));
    } else if (is_pair_line(l) || l.tokens[0].kind == Tok::word) {
      auto pr = p.pair(l, directed, directed, false);
      if (!pr) continue;
      if (directed && pr->arrow != Tok::arrow) {
        p.error(LineParser::span_of(l, l.tokens[1]), "expected '->' in a diagram edge");
        continue;
      }
      if (!directed && pr->arrow != Tok::dashes) {
        p.error(LineParser::span_of(l, l.tokens[1]), "expected '--' in a skeleton link");
        continue;
      }
      src.pairs.push_back(std::move(*pr));
    } else {
      p.error(LineParser::span_of(l, l.tokens[0]), "unexpected '" + l.tokens[0].text + "'");
    }
  }
  return src;
}

// Duplicate ids and symbols; returns the set of declared ids.
std::set<std::string> check_declarations(const std::vector<ParsedVar>& vars, LineParser& p) {
  std::set<std::string> ids;
  std::set<std::string> symbols;
  for (const auto& v : vars) {
    if (!ids.insert(v.var.id).second)
      p.error(v.id_span, "duplicate variable id '" + v.var.id + "'", ErrorCode::duplicate_variable_id);
    if (v.var.symbol && !symbols.insert(*v.var.symbol).second)
      p.error(*v.symbol_span, "duplicate symbol '" + *v.var.symbol + "'", ErrorCode::duplicate_symbol);
  }
  return ids;
}

bool check_endpoints(const ParsedPair& pr, const std::set<std::string>& ids, LineParser& p) {
  bool ok = true;
  for (const auto* end : {&pr.a, &pr.b}) {
    if (!ids.contains(end->text)) {
      p.error(end->span, "unknown variable '" + end->text + "'", ErrorCode::unknown_variable);
      ok = false;
    }
  }
  return ok;
}

std::vector<Variable> variables_of(const GraphSource& src) {
  std::vector<Variable> out;
  for (const auto& v : src.vars) out.push_back(v.var);
  return out;
}

// ---------------------------------------------------------------------------
// Writing

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string name_token(std::string_view s) {
  const bool bare = !s.empty() && std::all_of(s.begin(), s.end(), is_word_char);
  return bare ? std::string(s) : quote(s);
}

std::string attribute_value(std::string_view s) {
  const bool bare = std::none_of(s.begin(), s.end(), [](char c) {
    return is_space(c) || c == '\n' || c == '\r' || c == '"' || c == '#' || c == '\\';
  });
  return bare ? std::string(s) : quote(s);
}

void write_variables(std::ostringstream& os, const std::vector<Variable>& vars) {
  for (const auto& v : vars) {
    os << "var " << v.id << ' ' << quote(v.label);
    if (v.symbol) os << " symbol=" << attribute_value(*v.symbol);
    if (v.group) os << " group=" << attribute_value(*v.group);
    os << '\n';
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Diagrams

ParseResult<CausalDiagram> parse_diagram(std::string_view text) {
  ParseResult<CausalDiagram> result;
  auto& diags = result.diagnostics;
  const auto lines = Lexer(diags).split(text);
  LineParser p(diags);

  if (lines.empty()) {
    p.error({1, 1, 1}, "expected 'diagram <name>' header");
    return result;
  }
  const auto src = parse_graph_lines(lines, "diagram", true, p);
  const auto ids = check_declarations(src.vars, p);

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<CausalEdge> edges;
  for (const auto& pr : src.pairs) {
    if (!check_endpoints(pr, ids, p)) continue;
    if (pr.a.text == pr.b.text) {
      p.error(pr.b.span, "self-loop on '" + pr.a.text + "'", ErrorCode::self_loop);
      continue;
    }
    if (!seen.emplace(pr.a.text, pr.b.text).second) {
      p.error(pr.a.span, "duplicate edge " + pr.a.text + " -> " + pr.b.text, ErrorCode::duplicate_edge);
      continue;
    }
    edges.push_back({pr.a.text, pr.b.text,
                     *pr.sign == Tok::plus ? Polarity::positive : Polarity::negative});
  }

  if (has_errors(diags)) return result;
  try {
    result.value = build_diagram(src.name.value_or(""), variables_of(src), std::move(edges));
  } catch (const Error& e) {
    p.error({1, 1, 1}, e.what(), e.code());
  }
  return result;
}

std::string serialize_diagram(const CausalDiagram& diagram) {
  std::ostringstream os;
  os << "diagram " << name_token(diagram.name()) << '\n';
  write_variables(os, diagram.variables());
  for (const auto& e : diagram.edges())
    os << e.from << " -> " << e.to << " : " << sign_char(e.polarity) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Skeletons

ParseResult<CausalSkeleton> parse_skeleton(std::string_view text) {
  ParseResult<CausalSkeleton> result;
  auto& diags = result.diagnostics;
  const auto lines = Lexer(diags).split(text);
  LineParser p(diags);

  if (lines.empty()) {
    p.error({1, 1, 1}, "expected 'skeleton <name>' header");
    return result;
  }
  const auto src = parse_graph_lines(lines, "skeleton", false, p);
  const auto ids = check_declarations(src.vars, p);

  std::set<Link> seen;
  std::vector<Link> links;
  for (const auto& pr : src.pairs) {
    if (!check_endpoints(pr, ids, p)) continue;
    if (pr.a.text == pr.b.text) {
      p.error(pr.b.span, "self-link on '" + pr.a.text + "'", ErrorCode::self_loop);
      continue;
    }
    Link link(pr.a.text, pr.b.text);
    if (!seen.insert(link).second) {
      p.error(pr.a.span, "duplicate link " + link.first + " -- " + link.second, ErrorCode::duplicate_edge);
      continue;
    }
    links.push_back(std::move(link));
  }

  if (has_errors(diags)) return result;
  try {
    result.value = build_skeleton(src.name.value_or(""), variables_of(src), std::move(links));
  } catch (const Error& e) {
    p.error({1, 1, 1}, e.what(), e.code());
  }
  return result;
}

std::string serialize_skeleton(const CausalSkeleton& skeleton) {
  std::ostringstream os;
  os << "skeleton " << name_token(skeleton.name()) << '\n';
  write_variables(os, skeleton.variables());
  for (const auto& l : skeleton.links()) os << l.first << " -- " << l.second << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Answer sheets

ParseResult<AnswerSheet> parse_answer_sheet(std::string_view text, const CausalSkeleton& skeleton) {
  ParseResult<AnswerSheet> result;
  auto& diags = result.diagnostics;
  const auto lines = Lexer(diags).split(text);
  LineParser p(diags);

  if (lines.empty()) {
    p.error({1, 1, 1}, "expected 'answers <skeleton>' header");
    return result;
  }

  AnswerSheet sheet;
  bool header_seen = false;
  bool student_seen = false;
  std::optional<SourceSpan> header_span;
  std::set<Link> answered;

  for (const auto& l : lines) {
    const auto& t = l.tokens;
    if (starts_with_keyword(l, "answers")) {
      if (header_seen) {
        p.error(LineParser::span_of(l, t[0]), "duplicate 'answers' header");
        continue;
      }
      header_seen = true;
      header_span = LineParser::span_of(l, t[0]);
      if (auto name = p.header(l, "answers")) {
        sheet.skeleton = *name;
        if (*name != skeleton.name())
          p.error(LineParser::span_of(l, t[1]),
                  "sheet is for skeleton '" + *name + "', expected '" + skeleton.name() + "'",
                  ErrorCode::skeleton_mismatch);
      }
      continue;
    }
    if (!header_seen) {
      p.error(LineParser::span_of(l, t[0]), "expected 'answers <skeleton>' header before this line");
      header_seen = true;
      header_span = LineParser::span_of(l, t[0]);
    }
    if (starts_with_keyword(l, "student")) {
      if (student_seen) {
        p.error(LineParser::span_of(l, t[0]), "duplicate 'student' line");
      } else if (auto name = p.header(l, "student")) {
        sheet.student = *name;
        student_seen = true;
      }
    } else if (starts_with_keyword(l, "loop")) {
      if (t.size() != 3 || t[1].kind != Tok::colon || t[2].kind != Tok::word ||
          (t[2].text != "reinforcing" && t[2].text != "balancing")) {
        p.error(t.size() >= 3 ? LineParser::span_of(l, t[2]) : LineParser::span_after(l),
                "expected 'loop: reinforcing' or 'loop: balancing'");
      } else if (sheet.loop_claim) {
        p.error(LineParser::span_of(l, t[0]), "duplicate loop claim");
      } else {
        sheet.loop_claim =
            t[2].text == "reinforcing" ? LoopPolarity::reinforcing : LoopPolarity::balancing;
      }
    } else if (t[0].kind == Tok::word) {
      auto pr = p.pair(l, true, true, true);
      if (!pr) continue;
      Link link(pr->a.text, pr->b.text);
      if (!skeleton.has_link(link)) {
        p.error({l.number, pr->a.span.column, pr->b.span.column + pr->b.span.length - pr->a.span.column},
                "link " + pr->a.text + " -- " + pr->b.text + " is not in skeleton '" + skeleton.name() + "'",
                ErrorCode::link_not_in_skeleton);
        continue;
      }
      if (!answered.insert(link).second) {
        p.error(pr->a.span, "link " + link.first + " -- " + link.second + " answered twice",
                ErrorCode::duplicate_answer);
        continue;
      }
      LinkAnswer a{link, Orientation::blank, ClaimedPolarity::blank};
      if (pr->arrow == Tok::arrow)
        a.orientation = pr->a.text == link.first ? Orientation::forward : Orientation::backward;
      a.polarity = *pr->sign == Tok::plus    ? ClaimedPolarity::positive
                 : *pr->sign == Tok::minus   ? ClaimedPolarity::negative
                                             : ClaimedPolarity::blank;
      sheet.answers.push_back(std::move(a));
    } else {
      p.error(LineParser::span_of(l, t[0]), "unexpected '" + t[0].text + "'");
    }
  }

  if (!student_seen)
    p.error(header_span.value_or(SourceSpan{1, 1, 1}), "missing 'student \"<name>\"' line");

  for (const auto& link : skeleton.links()) {
    if (!answered.contains(link))
      p.warning(header_span.value_or(SourceSpan{1, 1, 1}),
                "no answer for link " + link.first + " -- " + link.second + "; graded as blank");
  }

  if (!has_errors(diags)) result.value = std::move(sheet);
  return result;
}

std::string serialize_answer_sheet(const AnswerSheet& sheet) {
  std::ostringstream os;
  os << "answers " << name_token(sheet.skeleton) << '\n';
  os << "student " << quote(sheet.student) << '\n';
  for (const auto& a : sheet.answers) {
    switch (a.orientation) {
      case Orientation::forward: os << a.link.first << " -> " << a.link.second; break;
      case Orientation::backward: os << a.link.second << " -> " << a.link.first; break;
      case Orientation::blank: os << a.link.first << " -- " << a.link.second; break;
    }
    os << " : "
       << (a.polarity == ClaimedPolarity::positive   ? '+'
           : a.polarity == ClaimedPolarity::negative ? '-'
                                                     : '?')
       << '\n';
  }
  if (sheet.loop_claim) os << "loop: " << to_string(*sheet.loop_claim) << '\n';
  return os.str();
}

AnswerSheet perfect_sheet(const CausalDiagram& reference, std::string student) {
  AnswerSheet sheet{std::move(student), reference.name(), {}, std::nullopt};
  std::set<Link> done;
  for (const auto& e : reference.edges()) {
    Link link(e.from, e.to);
    if (!done.insert(link).second) continue;
    sheet.answers.push_back({link, e.from == link.first ? Orientation::forward : Orientation::backward,
                             e.polarity == Polarity::positive ? ClaimedPolarity::positive
                                                              : ClaimedPolarity::negative});
  }
  std::sort(sheet.answers.begin(), sheet.answers.end(),
            [](const LinkAnswer& a, const LinkAnswer& b) { return a.link < b.link; });
  const auto loops = enumerate_loops(reference, {.max_cycles = 2});
  if (loops.loops.size() == 1) sheet.loop_claim = loops.loops.front().polarity;
  return sheet;
}

// ---------------------------------------------------------------------------
// DOT

std::string export_dot(const CausalDiagram& diagram,
                       const std::map<std::string, PropagationVerdict>* overlay) {
  std::ostringstream os;
  os << "digraph " << quote(diagram.name()) << " {\n";
  for (const auto& v : diagram.variables()) {
    std::string label = v.label.empty() ? v.id : v.label;
    std::string_view color;
    if (overlay) {
      if (auto it = overlay->find(v.id); it != overlay->end()) {
        switch (it->second.outcome) {
          case Outcome::increase: label += " ↑"; color = "red"; break;
          case Outcome::decrease: label += " ↓"; color = "red"; break;
          case Outcome::indeterminate: label += " ?"; color = "orange"; break;
          case Outcome::no_effect: break;
        }
      }
    }
    os << "  " << quote(v.id) << " [label=" << quote(label);
    if (!color.empty()) os << ", color=" << color << ", fontcolor=" << color;
    os << "];\n";
  }
  for (const auto& e : diagram.edges())
    os << "  " << quote(e.from) << " -> " << quote(e.to) << " [label=" << quote(sign_char(e.polarity))
       << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace causal_econ
