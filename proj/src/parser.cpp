#include "hls/parser.hpp"

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace hls {

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : Error(kind == Kind::unknown_signal ? Stage::signature : Stage::property,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Stage::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  number,
  ident,
  lparen,
  rparen,
  lbrack,
  rbrack,
  comma,
  colon,
  plus,
  minus,
  star,
  lt,
  le,
  eq,
  ne,
  ge,
  gt,
  at_i,
  at_t,
  kw_exists,
  kw_forall,
  kw_in,
  kw_such,
  kw_that,
  kw_not,
  kw_and,
  kw_or,
  kw_implies,
  kw_i2t,
  kw_t2i,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
 public:
  Lexer(std::string_view text, const std::set<SignalName>& signature) : text_(text), signature_(signature) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", here(pos_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  Span here(std::size_t begin) const {
    Span s;
    s.begin = begin;
    s.end = begin;
    s.line = line_;
    s.column = static_cast<int>(begin - line_start_) + 1;
    return s;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    Span s = here(at);
    throw ParseError(ParseError::Kind::syntax, s.line, s.column, msg);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  std::size_t word_end(std::size_t from) const {
    std::size_t p = from;
    while (p < text_.size()) {
      auto c = static_cast<unsigned char>(text_[p]);
      if (!is_word_byte(c)) break;
      // Unicode operators are not identifier characters.
      auto rest = text_.substr(p);
      if (rest.starts_with("\xE2\x89\xA4") || rest.starts_with("\xE2\x89\xA5") || rest.starts_with("\xE2\x89\xA0"))
        break;
      ++p;
    }
    return p;
  }

  Token make(Tok kind, std::size_t begin, std::size_t len) {
    Token t{kind, std::string(text_.substr(begin, len)), here(begin)};
    pos_ = begin + len;
    t.span.end = pos_;
    return t;
  }

  Token next() {
    const std::size_t begin = pos_;
    const char c = text_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < text_.size() &&
                                                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t p = pos_;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (p < text_.size() && text_[p] == '.') {
        ++p;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      }
      if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
        if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
          while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
          p = q;
        }
      }
      if (p < text_.size() && is_word_byte(static_cast<unsigned char>(text_[p])) && text_[p] != 's' &&
          word_end(p) != p)
        fail(p, "unexpected character after number");
      return make(Tok::number, begin, p - begin);
    }

    if (is_word_byte(static_cast<unsigned char>(c)) && word_end(pos_) > pos_) {
      std::size_t end = word_end(pos_);
      // Hyphenated signal names: take the longest '-'-joined run that is declared.
      std::size_t probe = end;
      while (probe < text_.size() && text_[probe] == '-' && probe + 1 < text_.size() &&
             is_word_byte(static_cast<unsigned char>(text_[probe + 1]))) {
        probe = word_end(probe + 1);
        if (signature_.count(std::string(text_.substr(begin, probe - begin)))) end = probe;
      }
      std::string word(text_.substr(begin, end - begin));
      static const std::pair<const char*, Tok> keywords[] = {
          {"exists", Tok::kw_exists}, {"forall", Tok::kw_forall}, {"in", Tok::kw_in},
          {"such", Tok::kw_such},     {"that", Tok::kw_that},     {"not", Tok::kw_not},
          {"and", Tok::kw_and},       {"or", Tok::kw_or},         {"implies", Tok::kw_implies},
          {"i2t", Tok::kw_i2t},       {"t2i", Tok::kw_t2i},
      };
      for (const auto& [kw, tok] : keywords)
        if (word == kw) return make(tok, begin, end - begin);
      return make(Tok::ident, begin, end - begin);
    }

    if (starts_with("@i")) return make(Tok::at_i, begin, 2);
    if (starts_with("@t")) return make(Tok::at_t, begin, 2);
    if (starts_with("<=")) return make(Tok::le, begin, 2);
    if (starts_with(">=")) return make(Tok::ge, begin, 2);
    if (starts_with("!=")) return make(Tok::ne, begin, 2);
    if (starts_with("\xE2\x89\xA4")) return make(Tok::le, begin, 3);
    if (starts_with("\xE2\x89\xA5")) return make(Tok::ge, begin, 3);
    if (starts_with("\xE2\x89\xA0")) return make(Tok::ne, begin, 3);
    switch (c) {
      case '(': return make(Tok::lparen, begin, 1);
      case ')': return make(Tok::rparen, begin, 1);
      case '[': return make(Tok::lbrack, begin, 1);
      case ']': return make(Tok::rbrack, begin, 1);
      case ',': return make(Tok::comma, begin, 1);
      case ':': return make(Tok::colon, begin, 1);
      case '+': return make(Tok::plus, begin, 1);
      case '-': return make(Tok::minus, begin, 1);
      case '*': return make(Tok::star, begin, 1);
      case '<': return make(Tok::lt, begin, 1);
      case '>': return make(Tok::gt, begin, 1);
      case '=': return make(Tok::eq, begin, 1);
      default: break;
    }
    fail(begin, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const std::set<SignalName>& signature_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

// ---------------------------------------------------------------------------
// Untyped parse tree

struct BoundSyntax {
  std::string text;  // including sign
  bool open = false;
  bool time_unit = false;
  Span span;
};

struct PNode {
  enum class Kind { number, ident, i2t, t2i, at_i, at_t, neg, not_, arith, rel, boolean, quant };
  Kind kind;
  std::string text;
  ArithOp aop{};
  RelOp rop{};
  BoolOp bop{};
  Quantifier quantifier{};
  std::optional<Sort> annotation;
  std::optional<std::pair<BoundSyntax, BoundSyntax>> interval;
  std::unique_ptr<PNode> a;
  std::unique_ptr<PNode> b;
  Span span;
};

using PNodePtr = std::unique_ptr<PNode>;

Span join(const Span& a, const Span& b) {
  Span s = a;
  s.end = b.end;
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  PNodePtr parse_all() {
    auto e = expr(0);
    if (peek().kind != Tok::end) fail(peek(), "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, at.span.line, at.span.column,
                     at.kind == Tok::end ? msg + " (at end of input)" : msg);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return advance();
  }

  static PNodePtr node(PNode::Kind kind, Span span) {
    auto n = std::make_unique<PNode>();
    n->kind = kind;
    n->span = span;
    return n;
  }

  BoundSyntax bound() {
    BoundSyntax b;
    b.span = peek().span;
    if (peek().kind == Tok::minus) {
      advance();
      b.text = "-";
    } else if (peek().kind == Tok::plus) {
      advance();
    }
    b.text += expect(Tok::number, "a numeric interval bound").text;
    if (peek().kind == Tok::ident && peek().text == "s") {
      advance();
      b.time_unit = true;
    }
    return b;
  }

  PNodePtr quantifier() {
    const Token& kw = advance();
    auto n = node(PNode::Kind::quant, kw.span);
    n->quantifier = kw.kind == Tok::kw_exists ? Quantifier::exists : Quantifier::forall;
    const Token& var = expect(Tok::ident, "a variable name after quantifier");
    n->text = var.text;
    if (peek().kind == Tok::colon) {
      advance();
      const Token& s = expect(Tok::ident, "a sort (index, time or real)");
      if (s.text == "index")
        n->annotation = Sort::index;
      else if (s.text == "time")
        n->annotation = Sort::time;
      else if (s.text == "real")
        n->annotation = Sort::value;
      else
        fail(s, "unknown sort '" + s.text + "' (expected index, time or real)");
    }
    if (peek().kind == Tok::kw_in) {
      advance();
      const Token& open = advance();
      if (open.kind != Tok::lbrack && open.kind != Tok::lparen) fail(open, "expected '[' or '(' to open an interval");
      BoundSyntax lo = bound();
      lo.open = open.kind == Tok::lparen;
      expect(Tok::comma, "',' between interval bounds");
      BoundSyntax hi = bound();
      const Token& close = advance();
      if (close.kind != Tok::rbrack && close.kind != Tok::rparen) fail(close, "expected ']' or ')' to close an interval");
      hi.open = close.kind == Tok::rparen;
      n->interval = std::make_pair(lo, hi);
    }
    expect(Tok::kw_such, "'such that'");
    expect(Tok::kw_that, "'that' after 'such'");
    n->a = expr(0);
    n->span = join(n->span, n->a->span);
    return n;
  }

  PNodePtr prefix() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        auto n = node(PNode::Kind::number, advance().span);
        n->text = t.text;
        return n;
      }
      case Tok::ident: {
        auto n = node(PNode::Kind::ident, advance().span);
        n->text = t.text;
        return n;
      }
      case Tok::lparen: {
        Span open = advance().span;
        auto e = expr(0);
        Span close = expect(Tok::rparen, "')'").span;
        e->span = join(open, close);
        return e;
      }
      case Tok::kw_not: {
        Span s = advance().span;
        auto n = node(PNode::Kind::not_, s);
        n->a = expr(4);
        n->span = join(s, n->a->span);
        return n;
      }
      case Tok::minus: {
        Span s = advance().span;
        auto n = node(PNode::Kind::neg, s);
        n->a = expr(8);
        n->span = join(s, n->a->span);
        return n;
      }
      case Tok::kw_i2t:
      case Tok::kw_t2i: {
        Span s = advance().span;
        auto n = node(t.kind == Tok::kw_i2t ? PNode::Kind::i2t : PNode::Kind::t2i, s);
        expect(Tok::lparen, "'(' after conversion operator");
        n->a = expr(0);
        n->span = join(s, expect(Tok::rparen, "')'").span);
        return n;
      }
      case Tok::kw_exists:
      case Tok::kw_forall: return quantifier();
      default: fail(t, t.kind == Tok::end ? "expected a formula or term" : "unexpected '" + t.text + "'");
    }
  }

  struct InfixInfo {
    int lbp;
    bool right_assoc;
  };

  static std::optional<InfixInfo> infix(Tok k) {
    switch (k) {
      case Tok::kw_implies: return InfixInfo{1, true};
      case Tok::kw_or: return InfixInfo{2, false};
      case Tok::kw_and: return InfixInfo{3, false};
      case Tok::lt:
      case Tok::le:
      case Tok::eq:
      case Tok::ne:
      case Tok::ge:
      case Tok::gt: return InfixInfo{5, false};
      case Tok::plus:
      case Tok::minus: return InfixInfo{6, false};
      case Tok::star: return InfixInfo{7, false};
      case Tok::at_i:
      case Tok::at_t: return InfixInfo{9, false};
      default: return std::nullopt;
    }
  }

  static bool is_rel(Tok k) {
    return k == Tok::lt || k == Tok::le || k == Tok::eq || k == Tok::ne || k == Tok::ge || k == Tok::gt;
  }

  PNodePtr expr(int min_bp) {
    auto lhs = prefix();
    while (true) {
      const Token& op = peek();
      auto info = infix(op.kind);
      if (!info || info->lbp < min_bp) break;
      advance();
      auto rhs = expr(info->right_assoc ? info->lbp : info->lbp + 1);
      PNodePtr n;
      switch (op.kind) {
        case Tok::kw_implies:
        case Tok::kw_or:
        case Tok::kw_and:
          n = node(PNode::Kind::boolean, op.span);
          n->bop = op.kind == Tok::kw_and ? BoolOp::and_ : op.kind == Tok::kw_or ? BoolOp::or_ : BoolOp::implies;
          break;
        case Tok::plus:
        case Tok::minus:
        case Tok::star:
          n = node(PNode::Kind::arith, op.span);
          n->aop = op.kind == Tok::plus ? ArithOp::add : op.kind == Tok::minus ? ArithOp::sub : ArithOp::mul;
          break;
        case Tok::at_i:
        case Tok::at_t:
          if (lhs->kind != PNode::Kind::ident) fail(op, "left operand of " + op.text + " must be a signal name");
          n = node(op.kind == Tok::at_i ? PNode::Kind::at_i : PNode::Kind::at_t, op.span);
          n->text = lhs->text;
          break;
        default:
          n = node(PNode::Kind::rel, op.span);
          n->rop = op.kind == Tok::lt   ? RelOp::lt
                   : op.kind == Tok::le ? RelOp::le
                   : op.kind == Tok::eq ? RelOp::eq
                   : op.kind == Tok::ne ? RelOp::ne
                   : op.kind == Tok::ge ? RelOp::ge
                                        : RelOp::gt;
          if (is_rel(peek().kind)) fail(peek(), "comparison operators do not chain");
          break;
      }
      n->span = join(lhs->span, rhs->span);
      n->a = std::move(lhs);
      n->b = std::move(rhs);
      lhs = std::move(n);
    }
    return lhs;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Elaboration: sorts, scopes, signals

class Elaborator {
 public:
  explicit Elaborator(const std::set<SignalName>& signature) : signature_(signature) {}

  FormulaPtr formula(const PNode& n) {
    switch (n.kind) {
      case PNode::Kind::not_: return make_not(formula(*n.a), n.span);
      case PNode::Kind::boolean: return make_binary(n.bop, formula(*n.a), formula(*n.b), n.span);
      case PNode::Kind::rel: return relation(n);
      case PNode::Kind::quant: return quant(n);
      default: fail(ParseError::Kind::syntax, n.span, "expected a formula, found a term");
    }
  }

 private:
  [[noreturn]] static void fail(ParseError::Kind kind, const Span& at, const std::string& msg) {
    throw ParseError(kind, at.line, at.column, msg);
  }

  const Sort* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  static std::string sort_phrase(Sort s) {
    switch (s) {
      case Sort::time: return "time term";
      case Sort::index: return "index term";
      case Sort::value: return "value term";
    }
    return "term";
  }

  std::optional<Sort> infer(const PNode& n) const {
    switch (n.kind) {
      case PNode::Kind::number: return std::nullopt;
      case PNode::Kind::ident: {
        if (const Sort* s = lookup(n.text)) return *s;
        if (signature_.count(n.text))
          fail(ParseError::Kind::sort_mismatch, n.span,
               "bare signal '" + n.text + "' is not a term; use (" + n.text + " @i <index>) or (" + n.text +
                   " @t <time>)");
        fail(ParseError::Kind::unbound_variable, n.span, "unbound variable '" + n.text + "'");
      }
      case PNode::Kind::i2t: return Sort::time;
      case PNode::Kind::t2i: return Sort::index;
      case PNode::Kind::at_i:
      case PNode::Kind::at_t: return Sort::value;
      case PNode::Kind::neg: return infer(*n.a);
      case PNode::Kind::arith: {
        auto l = infer(*n.a);
        auto r = infer(*n.b);
        if (l && r && *l != *r)
          fail(ParseError::Kind::sort_mismatch, n.span,
               "sort mismatch: " + sort_phrase(*l) + " combined with " + sort_phrase(*r));
        return l ? l : r;
      }
      default: fail(ParseError::Kind::syntax, n.span, "expected a term, found a formula");
    }
  }

  static bool is_constant(const PNode& n) {
    return n.kind == PNode::Kind::number || (n.kind == PNode::Kind::neg && n.a->kind == PNode::Kind::number);
  }

  TermPtr literal(const std::string& text, bool negative, Sort sort, const Span& span) {
    auto v = parse_decimal(text);
    if (!v) fail(ParseError::Kind::syntax, span, "malformed number '" + text + "'");
    Real value = negative ? Real(-*v) : *v;
    if (sort == Sort::index && (!is_integer(value) || sgn(value) < 0))
      fail(ParseError::Kind::sort_mismatch, span, "index literal must be a natural number, found '" +
                                                      std::string(negative ? "-" : "") + text + "'");
    return make_literal(sort, value, negative ? "-" + text : text, span);
  }

  TermPtr term(const PNode& n, Sort want) {
    auto mismatch = [&](Sort got) {
      fail(ParseError::Kind::sort_mismatch, n.span, "sort mismatch: expected " + sort_phrase(want) + ", found " +
                                                        sort_phrase(got));
    };
    switch (n.kind) {
      case PNode::Kind::number: return literal(n.text, false, want, n.span);
      case PNode::Kind::ident: {
        Sort s = *infer(n);
        if (s != want) mismatch(s);
        return make_var(s, n.text, n.span);
      }
      case PNode::Kind::i2t:
        if (want != Sort::time) mismatch(Sort::time);
        return make_i2t(term(*n.a, Sort::index), n.span);
      case PNode::Kind::t2i:
        if (want != Sort::index) mismatch(Sort::index);
        return make_t2i(term(*n.a, Sort::time), n.span);
      case PNode::Kind::at_i:
      case PNode::Kind::at_t: {
        if (want != Sort::value) mismatch(Sort::value);
        if (!signature_.count(n.text))
          fail(ParseError::Kind::unknown_signal, n.a->span, "unknown signal '" + n.text + "'");
        if (n.kind == PNode::Kind::at_i) return make_at_index(n.text, term(*n.b, Sort::index), n.span);
        return make_at_time(n.text, term(*n.b, Sort::time), n.span);
      }
      case PNode::Kind::neg:
        if (n.a->kind == PNode::Kind::number) return literal(n.a->text, true, want, n.span);
        return make_arith(ArithOp::sub, make_literal(want, Real(0), "0", n.span), term(*n.a, want), n.span);
      case PNode::Kind::arith: {
        if (n.aop == ArithOp::mul && !is_constant(*n.a) && !is_constant(*n.b))
          fail(ParseError::Kind::syntax, n.span, "multiplication requires a constant operand");
        infer(n);
        return make_arith(n.aop, term(*n.a, want), term(*n.b, want), n.span);
      }
      default: fail(ParseError::Kind::syntax, n.span, "expected a term, found a formula");
    }
  }

  FormulaPtr relation(const PNode& n) {
    auto l = infer(*n.a);
    auto r = infer(*n.b);
    if (l && r && *l != *r)
      fail(ParseError::Kind::sort_mismatch, n.span,
           "sort mismatch: " + sort_phrase(*l) + " compared against " + sort_phrase(*r));
    const Sort s = l ? *l : r ? *r : Sort::value;
    return make_rel(n.rop, term(*n.a, s), term(*n.b, s), n.span);
  }

  Bound bound(const BoundSyntax& b, Sort sort) {
    auto v = parse_decimal(b.text);
    if (!v) fail(ParseError::Kind::syntax, b.span, "malformed bound '" + b.text + "'");
    if (sort == Sort::index && (!is_integer(*v) || sgn(*v) < 0))
      fail(ParseError::Kind::sort_mismatch, b.span, "index interval bounds must be natural numbers");
    return Bound{*v, b.text, b.open};
  }

  FormulaPtr quant(const PNode& n) {
    if (lookup(n.text))
      fail(ParseError::Kind::syntax, n.span, "variable '" + n.text + "' is already bound in this scope");
    const bool unit = n.interval && (n.interval->first.time_unit || n.interval->second.time_unit);
    std::optional<Sort> sort = n.annotation;
    if (!sort && unit) sort = Sort::time;
    if (!sort) sort = conventional_sort(n.text);
    if (!sort && !n.interval) sort = Sort::value;
    if (!sort)
      fail(ParseError::Kind::syntax, n.span,
           "cannot infer the sort of '" + n.text + "'; write '" + n.text + " : index' or '" + n.text + " : time'");
    if (unit && *sort != Sort::time)
      fail(ParseError::Kind::sort_mismatch, n.span, "interval with unit 's' bounds a non-time variable");
    if (*sort == Sort::value && n.interval)
      fail(ParseError::Kind::syntax, n.span, "real-valued quantifiers take no interval");
    if (*sort != Sort::value && !n.interval)
      fail(ParseError::Kind::syntax, n.span, std::string(to_string(*sort)) + " quantifier needs an interval");

    std::optional<Interval> range;
    if (n.interval) {
      range = Interval{bound(n.interval->first, *sort), bound(n.interval->second, *sort)};
      if (range->lower.value > range->upper.value)
        fail(ParseError::Kind::syntax, n.interval->first.span, "interval lower bound exceeds upper bound");
    }
    scope_.emplace_back(n.text, *sort);
    auto body = formula(*n.a);
    scope_.pop_back();
    return make_quant(n.quantifier, *sort, n.text, range, body, n.span);
  }

  const std::set<SignalName>& signature_;
  std::vector<std::pair<std::string, Sort>> scope_;
};

}  // namespace

FormulaPtr parse(std::string_view text, const std::set<SignalName>& signature) {
  auto tokens = Lexer(text, signature).run();
  auto tree = Parser(std::move(tokens)).parse_all();
  return Elaborator(signature).formula(*tree);
}

namespace {

// Splits a declaration line into whitespace-separated words, ignoring comments.
std::vector<std::string> words_of(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r' || c == ':') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      if (c == ':') out.emplace_back(":");
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Returns the text with declaration lines blanked (offsets preserved).
std::pair<std::string, std::optional<std::set<SignalName>>> split_declarations(std::string_view text) {
  std::string body(text);
  std::optional<std::set<SignalName>> declared;
  std::size_t start = 0;
  int lineno = 0;
  while (start <= body.size()) {
    ++lineno;
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    auto words = words_of(std::string_view(body).substr(start, end - start));
    if (!words.empty() && words[0] == "signal") {
      if (words.size() != 4 || words[2] != ":" || words[3] != "real")
        throw ParseError(ParseError::Kind::syntax, lineno, 1, "expected 'signal <name> : real'");
      if (!declared) declared.emplace();
      declared->insert(words[1]);
      for (std::size_t i = start; i < end; ++i) body[i] = ' ';
    }
    if (end == body.size()) break;
    start = end + 1;
  }
  return {body, declared};
}

}  // namespace

std::optional<std::set<SignalName>> declared_signals(std::string_view text) {
  return split_declarations(text).second;
}

Property parse_property(std::string_view text, const std::set<SignalName>& fallback) {
  auto [body, declared] = split_declarations(text);
  Property p;
  p.declared = declared;
  p.formula = parse(body, declared ? *declared : fallback);
  return p;
}

}  // namespace hls
