#include "quiver/parser.hpp"

#include <cctype>
#include <set>

namespace quiver {

namespace {

enum class Tok {
  End, Ident, Number, String,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semi, Colon, Dot, At, Arrow,
  Eq, Ne, Le, Lt, Ge, Gt,
  Plus, Minus, Star, Slash,
  AndAnd, OrOr, Bang,
  Implies, CoImplies,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.span = {line, col, 1};
    if (pos >= src.size()) return t;
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    auto emit = [&](Tok k, size_t n) {
      t.kind = k;
      t.text = src.substr(pos, n);
      t.span.len = static_cast<int>(n);
      advance(n);
      return t;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t n = 0;
      while (pos + n < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos + n])) ||
              src[pos + n] == '_'))
        ++n;
      return emit(Tok::Ident, n);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t n = 0;
      bool dot = false;
      while (pos + n < src.size()) {
        char d = src[pos + n];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          ++n;
        } else if (d == '.' && !dot && pos + n + 1 < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[pos + n + 1]))) {
          dot = true;
          ++n;
        } else {
          break;
        }
      }
      return emit(Tok::Number, n);
    }
    if (c == '"') {
      size_t n = 1;
      while (pos + n < src.size() && src[pos + n] != '"') ++n;
      if (pos + n >= src.size())
        throw SyntaxError("unterminated string literal", t.span);
      Token s = emit(Tok::String, n + 1);
      s.text = s.text.substr(1, s.text.size() - 2);
      return s;
    }
    if (two('=', '=') && pos + 2 < src.size() && src[pos + 2] == '>')
      return emit(Tok::Implies, 3);
    if (two('~', '~') && pos + 2 < src.size() && src[pos + 2] == '>')
      return emit(Tok::CoImplies, 3);
    if (two('-', '>')) return emit(Tok::Arrow, 2);
    if (two('!', '=')) return emit(Tok::Ne, 2);
    if (two('<', '=')) return emit(Tok::Le, 2);
    if (two('>', '=')) return emit(Tok::Ge, 2);
    if (two('&', '&')) return emit(Tok::AndAnd, 2);
    if (two('|', '|')) return emit(Tok::OrOr, 2);
    switch (c) {
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case '{': return emit(Tok::LBrace, 1);
      case '}': return emit(Tok::RBrace, 1);
      case '[': return emit(Tok::LBracket, 1);
      case ']': return emit(Tok::RBracket, 1);
      case ',': return emit(Tok::Comma, 1);
      case ';': return emit(Tok::Semi, 1);
      case ':': return emit(Tok::Colon, 1);
      case '.': return emit(Tok::Dot, 1);
      case '@': return emit(Tok::At, 1);
      case '=': return emit(Tok::Eq, 1);
      case '<': return emit(Tok::Lt, 1);
      case '>': return emit(Tok::Gt, 1);
      case '+': return emit(Tok::Plus, 1);
      case '-': return emit(Tok::Minus, 1);
      case '*': return emit(Tok::Star, 1);
      case '/': return emit(Tok::Slash, 1);
      case '!': return emit(Tok::Bang, 1);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", t.span);
  }
};

const std::set<std::string> kKeywords = {
    "proc", "coproc", "pre", "post", "var", "if", "else", "while", "demonic",
    "angelic", "assert", "coassert", "assume", "coassume", "havoc", "cohavoc",
    "validate", "covalidate", "reward", "flip", "inf", "sup", "infty", "true",
    "false", "min", "max", "ite", "embed", "spec", "Bool", "Int", "UInt",
    "UReal", "EUReal"};

struct Parser {
  Lexer lex;
  Token tok;
  std::string file;
  std::map<std::string, Type> symbols;
  int next_id = 1;

  Parser(const std::string& src, std::string filename)
      : lex(src), file(std::move(filename)) {
    tok = lex.next();
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, tok.span); }

  void bump() { tok = lex.next(); }

  bool at(Tok k) const { return tok.kind == k; }
  bool at_kw(const std::string& kw) const {
    return tok.kind == Tok::Ident && tok.text == kw;
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    Token t = tok;
    bump();
    return t;
  }

  void expect_kw(const std::string& kw) {
    if (!at_kw(kw)) fail("expected '" + kw + "'");
    bump();
  }

  bool eat(Tok k) {
    if (at(k)) {
      bump();
      return true;
    }
    return false;
  }

  bool eat_kw(const std::string& kw) {
    if (at_kw(kw)) {
      bump();
      return true;
    }
    return false;
  }

  std::string expect_ident() {
    if (!at(Tok::Ident) || kKeywords.count(tok.text))
      fail("expected identifier");
    std::string s = tok.text;
    bump();
    return s;
  }

  Type expect_type() {
    if (!at(Tok::Ident)) fail("expected type");
    auto t = type_from_name(tok.text);
    if (!t) fail("unknown type '" + tok.text + "'");
    bump();
    return *t;
  }

  Rat expect_number() {
    Token n = expect(Tok::Number, "number");
    auto r = parse_rational(n.text);
    if (!r) throw SyntaxError("bad number", n.span);
    if (eat(Tok::Slash)) {
      Token d = expect(Tok::Number, "denominator");
      auto rd = parse_rational(d.text);
      if (!rd || *rd == 0) throw SyntaxError("bad denominator", d.span);
      return *r / *rd;
    }
    return *r;
  }

  // --- expressions -------------------------------------------------------

  ExprPtr with_span(ExprPtr e, Span s) {
    Expr copy = *e;
    copy.span = s;
    return std::make_shared<const Expr>(std::move(copy));
  }

  ExprPtr parse_expr() { return parse_implies(); }

  ExprPtr parse_implies() {
    ExprPtr lhs = parse_or();
    Span s = tok.span;
    if (eat(Tok::Implies)) return with_span(Expr::mk_implies(lhs, parse_implies()), s);
    if (eat(Tok::CoImplies))
      return with_span(Expr::mk_coimplies(lhs, parse_implies()), s);
    return lhs;
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at(Tok::OrOr)) {
      Span s = tok.span;
      bump();
      lhs = with_span(Expr::mk_or(lhs, parse_and()), s);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_cmp();
    while (at(Tok::AndAnd)) {
      Span s = tok.span;
      bump();
      lhs = with_span(Expr::mk_and(lhs, parse_cmp()), s);
    }
    return lhs;
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_additive();
    CmpOp op;
    switch (tok.kind) {
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      default: return lhs;
    }
    Span s = tok.span;
    bump();
    return with_span(Expr::mk_cmp(op, lhs, parse_additive()), s);
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_mul();
    for (;;) {
      Span s = tok.span;
      if (eat(Tok::Plus))
        lhs = with_span(Expr::mk_add(lhs, parse_mul()), s);
      else if (eat(Tok::Minus))
        lhs = with_span(Expr::mk_sub(lhs, parse_mul()), s);
      else
        return lhs;
    }
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    while (at(Tok::Star)) {
      Span s = tok.span;
      bump();
      lhs = with_span(Expr::mk_mul(lhs, parse_unary()), s);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    Span s = tok.span;
    if (eat(Tok::Bang)) return with_span(Expr::mk_not(parse_unary()), s);
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Span s = tok.span;
    if (at(Tok::Number)) return with_span(Expr::mk_rat(expect_number()), s);
    if (eat(Tok::LParen)) {
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (eat(Tok::LBracket)) {
      ExprPtr b = parse_expr();
      expect(Tok::RBracket, "']'");
      return with_span(Expr::mk_iverson(b), s);
    }
    if (at(Tok::Ident)) {
      const std::string word = tok.text;
      if (word == "true" || word == "false") {
        bump();
        return with_span(Expr::mk_bool(word == "true"), s);
      }
      if (word == "infty") {
        bump();
        return with_span(Expr::mk_inf(), s);
      }
      if (word == "embed" || word == "validate" || word == "covalidate") {
        bump();
        expect(Tok::LParen, "'('");
        ExprPtr a = parse_expr();
        expect(Tok::RParen, "')'");
        if (word == "embed") return with_span(Expr::mk_embed(a), s);
        if (word == "validate") return with_span(Expr::mk_validate(a), s);
        return with_span(Expr::mk_covalidate(a), s);
      }
      if (word == "min" || word == "max") {
        bump();
        expect(Tok::LParen, "'('");
        ExprPtr a = parse_expr();
        expect(Tok::Comma, "','");
        ExprPtr b = parse_expr();
        expect(Tok::RParen, "')'");
        return with_span(word == "min" ? Expr::mk_min(a, b) : Expr::mk_max(a, b), s);
      }
      if (word == "ite") {
        bump();
        expect(Tok::LParen, "'('");
        ExprPtr c = parse_expr();
        expect(Tok::Comma, "','");
        ExprPtr a = parse_expr();
        expect(Tok::Comma, "','");
        ExprPtr b = parse_expr();
        expect(Tok::RParen, "')'");
        return with_span(Expr::mk_ite(c, a, b), s);
      }
      if (word == "inf" || word == "sup") {
        bump();
        std::string x = expect_ident();
        expect(Tok::Colon, "':'");
        Type t = expect_type();
        expect(Tok::Dot, "'.'");
        if (symbols.count(x))
          throw SyntaxError("quantifier shadows declared variable '" + x + "'", s);
        symbols[x] = t;
        ExprPtr body = parse_implies();
        symbols.erase(x);
        return with_span(word == "inf" ? Expr::mk_inf_quant(x, t, body)
                                       : Expr::mk_sup_quant(x, t, body),
                         s);
      }
      if (kKeywords.count(word)) fail("unexpected keyword '" + word + "'");
      bump();
      auto it = symbols.find(word);
      if (it == symbols.end())
        throw TypeError("use of undeclared variable '" + word + "'", s);
      return with_span(Expr::mk_var(word, it->second), s);
    }
    fail("expected expression");
  }

  // --- distributions -----------------------------------------------------

  bool rhs_is_distribution() {
    return at(Tok::LBrace) || at_kw("flip");
  }

  std::vector<DistBranch> parse_distribution(Type target) {
    Span s = tok.span;
    std::vector<DistBranch> branches;
    if (eat_kw("flip")) {
      expect(Tok::LParen, "'('");
      Rat p = expect_number();
      expect(Tok::RParen, "')'");
      if (p < 0 || p > 1)
        throw DistributionNotNormalized("flip probability out of [0,1]", s);
      if (target != Type::Bool)
        throw TypeError("flip assigns Bool", s);
      branches.push_back({p, Expr::mk_bool(true)});
      branches.push_back({Rat(1) - p, Expr::mk_bool(false)});
    } else {
      expect(Tok::LBrace, "'{'");
      do {
        Rat p = expect_number();
        expect(Tok::Colon, "':'");
        ExprPtr value = parse_expr();
        if (!coercible(value->type, target))
          throw TypeError("distribution value has type " + type_name(value->type) +
                              ", expected " + type_name(target),
                          value->span);
        branches.push_back({p, value});
      } while (eat(Tok::Comma));
      expect(Tok::RBrace, "'}'");
      Rat sum(0);
      for (const auto& b : branches) {
        if (b.prob < 0 || b.prob > 1)
          throw DistributionNotNormalized("probability out of [0,1]", s);
        sum += b.prob;
      }
      if (sum != 1)
        throw DistributionNotNormalized(
            "distribution probabilities sum to " + rat_to_string(sum), s);
    }
    return branches;
  }

  // --- statements --------------------------------------------------------

  std::vector<Annotation> parse_annotations() {
    std::vector<Annotation> anns;
    while (at(Tok::At)) {
      Span s = tok.span;
      bump();
      Annotation a;
      a.name = expect_ident();
      a.span = s;
      if (a.name == "invariant") {
        expect(Tok::LParen, "'('");
        a.expr = parse_expr();
        expect(Tok::RParen, "')'");
      } else if (a.name == "error_msg" || a.name == "success_msg") {
        expect(Tok::LParen, "'('");
        a.text = expect(Tok::String, "string").text;
        expect(Tok::RParen, "')'");
      } else if (a.name == "slice_verify") {
        if (eat(Tok::LParen)) expect(Tok::RParen, "')'");
      } else {
        throw SyntaxError("unknown annotation '@" + a.name + "'", s);
      }
      anns.push_back(std::move(a));
    }
    return anns;
  }

  void check_annotations(const Stmt& s) {
    for (const auto& a : s.annotations) {
      if (a.name == "invariant" && s.kind != StmtKind::While)
        throw SyntaxError("@invariant only applies to while loops", a.span);
      if ((a.name == "error_msg" || a.name == "success_msg") &&
          s.kind != StmtKind::Assert && s.kind != StmtKind::CoAssert &&
          s.kind != StmtKind::Assume && s.kind != StmtKind::CoAssume)
        throw SyntaxError("@" + a.name + " only applies to verification statements",
                          a.span);
    }
  }

  ExprPtr expect_expectation() {
    ExprPtr e = parse_expr();
    if (!is_numeric(e->type))
      throw TypeError("expectation required, got Bool", e->span);
    return e;
  }

  StmtPtr parse_statement() {
    std::vector<Annotation> anns = parse_annotations();
    Span s = tok.span;
    Stmt st;
    st.annotations = std::move(anns);
    st.span = s;
    st.id = next_id++;

    auto finish = [&]() {
      check_annotations(st);
      return mk_stmt(std::move(st));
    };

    if (eat_kw("var")) {
      st.kind = StmtKind::VarDecl;
      Token name = tok;
      st.var = expect_ident();
      expect(Tok::Colon, "':'");
      st.var_type = expect_type();
      expect(Tok::Eq, "'='");
      if (symbols.count(st.var))
        throw SyntaxError("shadowing declaration of '" + st.var + "'", name.span);
      if (rhs_is_distribution()) {
        st.dist = parse_distribution(st.var_type);
      } else {
        ExprPtr init = parse_expr();
        if (!coercible(init->type, st.var_type))
          throw TypeError("initializer has type " + type_name(init->type) +
                              ", expected " + type_name(st.var_type),
                          init->span);
        st.dist = {{Rat(1), init}};
      }
      symbols[st.var] = st.var_type;
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("assert")) {
      st.kind = StmtKind::Assert;
      st.expr = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("coassert")) {
      st.kind = StmtKind::CoAssert;
      st.expr = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("assume")) {
      st.kind = StmtKind::Assume;
      st.expr = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("coassume")) {
      st.kind = StmtKind::CoAssume;
      st.expr = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("reward")) {
      st.kind = StmtKind::Reward;
      st.expr = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (at_kw("havoc") || at_kw("cohavoc")) {
      bool co = tok.text == "cohavoc";
      bump();
      std::vector<StmtPtr> seq;
      do {
        Token name = tok;
        std::string v = expect_ident();
        auto it = symbols.find(v);
        if (it == symbols.end())
          throw TypeError("havoc of undeclared variable '" + v + "'", name.span);
        Stmt h;
        h.kind = co ? StmtKind::CoHavoc : StmtKind::Havoc;
        h.var = v;
        h.var_type = it->second;
        h.span = name.span;
        h.id = next_id++;
        seq.push_back(mk_stmt(std::move(h)));
      } while (eat(Tok::Comma));
      expect(Tok::Semi, "';'");
      if (seq.size() == 1) {
        Stmt single = *seq[0];
        single.annotations = std::move(st.annotations);
        check_annotations(single);
        return mk_stmt(std::move(single));
      }
      // multi-variable havoc is sugar for a sequence
      st.kind = StmtKind::Block;
      st.stmts = std::move(seq);
      return finish();
    }
    if (eat_kw("spec")) {
      // spec (v1, ..., vk) pre X post Y;  placeholder for any statement
      // satisfying the triple, modifying only the listed variables.
      st.kind = StmtKind::Spec;
      expect(Tok::LParen, "'('");
      if (!at(Tok::RParen)) {
        do {
          Token name = tok;
          std::string v = expect_ident();
          if (!symbols.count(v))
            throw TypeError("spec modifies undeclared variable '" + v + "'",
                            name.span);
          st.vars_list.push_back(v);
        } while (eat(Tok::Comma));
      }
      expect(Tok::RParen, "')'");
      expect_kw("pre");
      st.expr = expect_expectation();
      expect_kw("post");
      st.expr2 = expect_expectation();
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("validate")) {
      st.kind = StmtKind::Validate;
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (eat_kw("covalidate")) {
      st.kind = StmtKind::CoValidate;
      expect(Tok::Semi, "';'");
      return finish();
    }
    if (at(Tok::Ident) && !kKeywords.count(tok.text)) {
      Token name = tok;
      st.var = expect_ident();
      auto it = symbols.find(st.var);
      if (it == symbols.end())
        throw TypeError("assignment to undeclared variable '" + st.var + "'",
                        name.span);
      expect(Tok::Eq, "'='");
      if (rhs_is_distribution()) {
        st.kind = StmtKind::RandAssign;
        st.dist = parse_distribution(it->second);
      } else {
        st.kind = StmtKind::Assign;
        st.expr = parse_expr();
        if (!coercible(st.expr->type, it->second))
          throw TypeError("assigned value has type " + type_name(st.expr->type) +
                              ", expected " + type_name(it->second),
                          st.expr->span);
      }
      expect(Tok::Semi, "';'");
      return finish();
    }
    fail("expected statement");
  }

  StmtPtr parse_block() {
    Span s = tok.span;
    expect(Tok::LBrace, "'{'");
    std::vector<StmtPtr> stmts;
    while (!at(Tok::RBrace)) stmts.push_back(parse_statement_or_if());
    expect(Tok::RBrace, "'}'");
    return mk_block(std::move(stmts), s);
  }

  StmtPtr parse_statement_or_if() {
    if (at_kw("if")) {
      std::vector<Annotation> anns;  // no annotations on choices
      Span s = tok.span;
      bump();
      Stmt st;
      st.span = s;
      st.id = next_id++;
      st.annotations = std::move(anns);
      if (eat_kw("demonic")) {
        st.kind = StmtKind::Demonic;
        st.s1 = parse_block();
        expect_kw("else");
        st.s2 = parse_block();
      } else if (eat_kw("angelic")) {
        st.kind = StmtKind::Angelic;
        st.s1 = parse_block();
        expect_kw("else");
        st.s2 = parse_block();
      } else {
        st.kind = StmtKind::If;
        st.expr = parse_expr();
        if (st.expr->type != Type::Bool)
          throw TypeError("if condition must be Bool", st.expr->span);
        st.s1 = parse_block();
        if (eat_kw("else"))
          st.s2 = parse_block();
        else
          st.s2 = mk_block({}, s);
      }
      return mk_stmt(std::move(st));
    }
    return parse_annotated();
  }

  StmtPtr parse_annotated() {
    // annotations then either while or plain statement
    std::vector<Annotation> anns = parse_annotations();
    if (at_kw("while")) {
      Span s = tok.span;
      bump();
      Stmt st;
      st.kind = StmtKind::While;
      st.span = s;
      st.id = next_id++;
      st.annotations = std::move(anns);
      st.expr = parse_expr();
      if (st.expr->type != Type::Bool)
        throw TypeError("loop guard must be Bool", st.expr->span);
      st.s1 = parse_block();
      check_annotations(st);
      return mk_stmt(std::move(st));
    }
    StmtPtr inner = parse_statement();
    if (anns.empty()) return inner;
    Stmt merged = *inner;
    for (auto& a : merged.annotations) anns.push_back(a);
    merged.annotations = std::move(anns);
    check_annotations(merged);
    return mk_stmt(std::move(merged));
  }

  // --- declarations ------------------------------------------------------

  std::vector<Param> parse_params() {
    std::vector<Param> params;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      do {
        Param p;
        p.span = tok.span;
        p.name = expect_ident();
        expect(Tok::Colon, "':'");
        p.type = expect_type();
        if (symbols.count(p.name))
          throw SyntaxError("duplicate parameter '" + p.name + "'", p.span);
        symbols[p.name] = p.type;
        params.push_back(std::move(p));
      } while (eat(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    return params;
  }

  ProcDecl parse_proc() {
    ProcDecl d;
    d.span = tok.span;
    d.file = file;
    if (eat_kw("proc"))
      d.direction = Direction::Proc;
    else if (eat_kw("coproc"))
      d.direction = Direction::CoProc;
    else
      fail("expected 'proc' or 'coproc'");
    symbols.clear();
    next_id = 1;
    d.name = expect_ident();
    d.inputs = parse_params();
    if (eat(Tok::Arrow)) d.outputs = parse_params();
    expect_kw("pre");
    d.pre = expect_expectation();
    expect_kw("post");
    d.post = expect_expectation();
    d.body = parse_block();
    d.symbols = symbols;
    return d;
  }

  Program parse() {
    Program p;
    while (!at(Tok::End)) p.procs.push_back(parse_proc());
    return p;
  }
};

}  // namespace

Program parse_program(const std::string& source, const std::string& filename) {
  Parser p(source, filename);
  return p.parse();
}

ExprPtr parse_expectation(const std::string& source,
                          const std::map<std::string, Type>& symbols) {
  Parser p(source, "<expr>");
  p.symbols = symbols;
  ExprPtr e = p.parse_expr();
  if (!p.at(Tok::End)) throw SyntaxError("trailing input", p.tok.span);
  return e;
}

}  // namespace quiver
