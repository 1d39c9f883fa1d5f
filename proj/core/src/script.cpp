#include "frobperf/script.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "frobperf/components.hpp"
#include "frobperf/groupoid.hpp"
#include "frobperf/parse.hpp"
#include "frobperf/perfection.hpp"
#include "frobperf/report.hpp"
#include "report_detail.hpp"

namespace frobperf {

namespace {

using detail::ojson;

[[noreturn]] void fail_at(const Token& t, const std::string& message,
                          std::vector<std::string> expected = {}) {
  throw parse_error({t.line, t.column, message, std::move(expected)});
}

struct Binding {
  enum class Kind { base, algebra, morphism, element, subalgebra };
  Kind kind = Kind::base;
  std::optional<PrimeField> field;  // base kind (pure fields have no algebra)
  AlgebraPtr algebra;               // base with generators, or algebra kind
  std::optional<AlgebraMorphism> morphism;
  std::optional<Polynomial> element;  // reduced in `home`
  AlgebraPtr home;                    // algebra an element/subalgebra lives in
  std::shared_ptr<Subalgebra> sub;
};

struct Command {
  Token verb;
  std::vector<Token> args;
  std::string file_arg;  // gpd-close / gpd-verify
};

std::string command_echo(const Command& c) {
  std::string s = c.verb.text;
  for (const auto& a : c.args) {
    s += ' ';
    s += a.text;
  }
  if (!c.file_arg.empty()) {
    s += ' ';
    s += c.file_arg;
  }
  return s;
}

bool is_command_verb(const std::string& s) {
  static const char* verbs[] = {"frobtwist", "frobmap",    "kernel",   "image",
                                "sup",       "chain",      "preperfect", "certify",
                                "unramified", "relperfect", "pi0",      "pi0-ring",
                                "gpd-close", "gpd-verify", "crosscheck"};
  for (const char* v : verbs)
    if (s == v) return true;
  return false;
}

const std::vector<std::string>& statement_starters() {
  static const std::vector<std::string> all = {
      "base",       "algebra",    "morphism",  "element",    "subalgebra",
      "frobtwist",  "frobmap",    "kernel",    "image",      "sup",
      "chain",      "preperfect", "certify",   "unramified", "relperfect",
      "pi0",        "pi0-ring",   "gpd-close", "gpd-verify", "crosscheck"};
  return all;
}

struct CmdResult {
  ojson rep;
  bool definite = true;
};

class Script {
public:
  Script(std::string_view text, const RunOptions& opts) : lx_(text), opts_(opts) {
    parse();
  }

  const std::vector<Command>& commands() const { return commands_; }

  CmdResult run(const Command& cmd);

private:
  // ---- surface syntax -----------------------------------------------------

  void parse() {
    while (true) {
      skip_separators();
      if (lx_.at_end()) break;
      const Token& t = lx_.peek();
      if (t.kind != Token::Kind::ident)
        fail_at(t, "expected a statement", statement_starters());
      if (t.text == "base")
        parse_base();
      else if (t.text == "algebra")
        parse_algebra();
      else if (t.text == "morphism")
        parse_morphism();
      else if (t.text == "element")
        parse_element();
      else if (t.text == "subalgebra")
        parse_subalgebra();
      else if (is_command_verb(t.text))
        parse_command();
      else
        fail_at(t, "unknown statement '" + t.text + "'", statement_starters());
      end_statement();
    }
  }

  void skip_separators() {
    while (lx_.peek().kind == Token::Kind::newline || peek_punct(";")) lx_.next();
  }

  void end_statement() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Kind::eof) return;
    if (t.kind == Token::Kind::newline || peek_punct(";")) {
      lx_.next();
      return;
    }
    fail_at(t, "unexpected input after a statement", {"newline", ";"});
  }

  bool peek_punct(const char* s) const {
    return lx_.peek().kind == Token::Kind::punct && lx_.peek().text == s;
  }

  bool accept_punct(const char* s) {
    if (!peek_punct(s)) return false;
    lx_.next();
    return true;
  }

  void expect_punct(const char* s) {
    if (!peek_punct(s)) fail_at(lx_.peek(), std::string("expected '") + s + "'", {s});
    lx_.next();
  }

  Token expect_ident(const std::string& what) {
    if (lx_.peek().kind != Token::Kind::ident)
      fail_at(lx_.peek(), "expected " + what, {"identifier"});
    return lx_.next();
  }

  Token expect_keyword(const char* kw) {
    Token t = expect_ident(std::string("'") + kw + "'");
    if (t.text != kw) fail_at(t, std::string("expected '") + kw + "'", {kw});
    return t;
  }

  Token expect_int(const std::string& what) {
    if (lx_.peek().kind != Token::Kind::integer)
      fail_at(lx_.peek(), "expected " + what, {"integer"});
    return lx_.next();
  }

  void check_fresh(const Token& name) {
    if (bindings_.count(name.text))
      fail_at(name, "the name '" + name.text + "' is already bound");
  }

  const Binding& lookup_parsed(const Token& name) {
    auto it = bindings_.find(name.text);
    if (it == bindings_.end()) fail_at(name, "unknown name '" + name.text + "'");
    return it->second;
  }

  // A bound algebra (pure prime fields do not qualify).
  AlgebraPtr algebra_of(const Token& name) {
    const Binding& b = lookup_parsed(name);
    if ((b.kind == Binding::Kind::base || b.kind == Binding::Kind::algebra) &&
        b.algebra)
      return b.algebra;
    if (b.kind == Binding::Kind::base)
      fail_at(name, "'" + name.text + "' names a pure prime field, not an algebra");
    fail_at(name, "'" + name.text + "' does not name an algebra");
  }

  std::vector<std::string> parse_var_list() {
    std::vector<std::string> vars;
    expect_punct("[");
    lx_.skip_newlines();
    if (accept_punct("]")) return vars;
    while (true) {
      Token v = expect_ident("a variable name");
      for (const auto& seen : vars)
        if (seen == v.text) fail_at(v, "duplicate variable '" + v.text + "'");
      vars.push_back(v.text);
      lx_.skip_newlines();
      if (accept_punct(",")) {
        lx_.skip_newlines();
        continue;
      }
      expect_punct("]");
      break;
    }
    return vars;
  }

  // Caller consumed the opening '('.
  std::vector<Polynomial> parse_poly_list(const RingPtr& ring) {
    std::vector<Polynomial> out;
    lx_.skip_newlines();
    if (accept_punct(")")) return out;
    while (true) {
      out.push_back(parse_polynomial_expr(lx_, ring));
      lx_.skip_newlines();
      if (accept_punct(",")) {
        lx_.skip_newlines();
        continue;
      }
      expect_punct(")");
      break;
    }
    return out;
  }

  void parse_base() {
    lx_.next();
    Token name = expect_ident("a name");
    check_fresh(name);
    expect_punct("=");
    Token gf = expect_keyword("GF");
    expect_punct("(");
    Token pt = expect_int("the characteristic");
    expect_punct(")");
    std::optional<PrimeField> field;
    try {
      field.emplace(static_cast<std::uint32_t>(
          pt.value <= 0xffffffffull ? pt.value : 0));
    } catch (const structural_error& e) {
      fail_at(pt, e.what());
    }

    bool has_vars = peek_punct("[");
    std::vector<std::string> vars;
    if (has_vars) vars = parse_var_list();
    std::vector<Polynomial> rels;
    if (accept_punct("/")) {
      expect_punct("(");
      rels = parse_poly_list(Algebra::ambient_ring_for(*field, nullptr, vars));
    }

    Binding b;
    b.kind = Binding::Kind::base;
    b.field = *field;
    if (has_vars) {
      try {
        b.algebra = Algebra::make(*field, nullptr, std::move(vars), std::move(rels),
                                  false, opts_.budget);
      } catch (const structural_error& e) {
        fail_at(name, e.what());
      }
    } else if (!rels.empty()) {
      fail_at(gf, "a pure prime field takes no relations");
    }
    bindings_.emplace(name.text, std::move(b));
  }

  void parse_algebra() {
    lx_.next();
    Token name = expect_ident("a name");
    check_fresh(name);
    expect_keyword("over");
    Token base_name = expect_ident("a base name");
    const Binding& bb = lookup_parsed(base_name);
    if (bb.kind != Binding::Kind::base && bb.kind != Binding::Kind::algebra)
      fail_at(base_name, "'" + base_name.text + "' cannot serve as a base");
    AlgebraPtr base_alg = bb.algebra;  // null: over the prime field itself
    PrimeField field = base_alg ? base_alg->field() : *bb.field;

    expect_punct("=");
    std::vector<std::string> vars = parse_var_list();
    if (base_alg) {
      for (const auto& v : vars)
        if (base_alg->ambient()->var_index(v))
          fail_at(name, "generator '" + v + "' collides with a base variable");
    }
    std::vector<Polynomial> rels;
    if (accept_punct("/")) {
      expect_punct("(");
      rels = parse_poly_list(Algebra::ambient_ring_for(field, base_alg, vars));
    }
    bool allow_zero = false;
    if (lx_.peek().kind == Token::Kind::ident && lx_.peek().text == "allow_zero") {
      lx_.next();
      allow_zero = true;
    }

    Binding b;
    b.kind = Binding::Kind::algebra;
    try {
      b.algebra = Algebra::make(field, base_alg, std::move(vars), std::move(rels),
                                allow_zero, opts_.budget);
    } catch (const structural_error& e) {
      fail_at(name, e.what());
    }
    bindings_.emplace(name.text, std::move(b));
  }

  void parse_morphism() {
    lx_.next();
    Token name = expect_ident("a name");
    check_fresh(name);
    expect_punct(":");
    Token src_name = expect_ident("the source algebra");
    AlgebraPtr S = algebra_of(src_name);
    expect_punct("->");
    Token tgt_name = expect_ident("the target algebra");
    AlgebraPtr T = algebra_of(tgt_name);
    expect_punct("=");
    expect_punct("{");
    lx_.skip_newlines();

    std::map<std::string, Polynomial> images;
    if (!accept_punct("}")) {
      while (true) {
        Token g = expect_ident("a source generator");
        bool known = false;
        for (const auto& gen : S->gens()) known = known || gen == g.text;
        if (!known)
          fail_at(g, "'" + g.text + "' is not a generator of '" + src_name.text + "'");
        if (images.count(g.text))
          fail_at(g, "generator '" + g.text + "' is mapped twice");
        expect_punct("->");
        images.emplace(g.text, parse_polynomial_expr(lx_, T->ambient()));
        lx_.skip_newlines();
        if (accept_punct(",")) {
          lx_.skip_newlines();
          continue;
        }
        expect_punct("}");
        break;
      }
    }
    std::vector<Polynomial> ordered;
    for (const auto& gen : S->gens()) {
      auto it = images.find(gen);
      if (it == images.end())
        fail_at(name, "morphism is missing an image for generator '" + gen + "'");
      ordered.push_back(it->second);
    }

    Binding b;
    b.kind = Binding::Kind::morphism;
    try {
      b.morphism.emplace(S, T, std::move(ordered));
    } catch (const structural_error& e) {
      fail_at(name, e.what());
    }
    bindings_.emplace(name.text, std::move(b));
  }

  void parse_element() {
    lx_.next();
    Token name = expect_ident("a name");
    check_fresh(name);
    expect_keyword("in");
    Token alg_name = expect_ident("an algebra name");
    AlgebraPtr A = algebra_of(alg_name);
    expect_punct("=");
    Polynomial e = parse_polynomial_expr(lx_, A->ambient());

    Binding b;
    b.kind = Binding::Kind::element;
    b.element = A->reduce(e);
    b.home = A;
    bindings_.emplace(name.text, std::move(b));
  }

  void parse_subalgebra() {
    lx_.next();
    Token name = expect_ident("a name");
    check_fresh(name);
    expect_keyword("in");
    Token alg_name = expect_ident("an algebra name");
    AlgebraPtr A = algebra_of(alg_name);
    expect_punct("=");
    expect_punct("(");
    std::vector<Polynomial> gens = parse_poly_list(A->ambient());

    Binding b;
    b.kind = Binding::Kind::subalgebra;
    b.home = A;
    b.sub = std::make_shared<Subalgebra>(A, std::move(gens), opts_.budget);
    bindings_.emplace(name.text, std::move(b));
  }

  void parse_command() {
    Command cmd;
    cmd.verb = lx_.next();
    const std::string& v = cmd.verb.text;
    auto name_arg = [&] { cmd.args.push_back(expect_ident("a name")); };
    auto int_arg = [&] { cmd.args.push_back(expect_int("a number")); };
    auto keyword_arg = [&](const char* kw) { cmd.args.push_back(expect_keyword(kw)); };
    auto peek_keyword = [&](const char* kw) {
      return lx_.peek().kind == Token::Kind::ident && lx_.peek().text == kw;
    };

    if (v == "frobtwist" || v == "frobmap" || v == "chain") {
      name_arg();
      int_arg();
    } else if (v == "kernel" || v == "image" || v == "unramified" ||
               v == "relperfect" || v == "pi0" || v == "pi0-ring") {
      name_arg();
    } else if (v == "sup") {
      name_arg();
      name_arg();
      name_arg();
    } else if (v == "certify") {
      name_arg();
      name_arg();
      name_arg();
      if (peek_keyword("levels")) {
        keyword_arg("levels");
        int_arg();
      }
    } else if (v == "preperfect") {
      name_arg();
      while (true) {
        if (peek_keyword("steps")) {
          keyword_arg("steps");
          int_arg();
        } else if (peek_keyword("probe")) {
          keyword_arg("probe");
          name_arg();
        } else if (peek_keyword("cert")) {
          keyword_arg("cert");
          name_arg();
          name_arg();
        } else {
          break;
        }
      }
    } else if (v == "gpd-close" || v == "gpd-verify") {
      cmd.file_arg = parse_file_path();
    } else if (v == "crosscheck") {
      name_arg();
      if (peek_keyword("pi0")) {
        keyword_arg("pi0");
        name_arg();
        keyword_arg("via");
        name_arg();
        keyword_arg("preperf");
        name_arg();
        keyword_arg("via");
        name_arg();
      }
    }
    commands_.push_back(std::move(cmd));
  }

  std::string parse_file_path() {
    if (lx_.peek().kind == Token::Kind::string) return lx_.next().text;
    std::string path;
    while (true) {
      const Token& t = lx_.peek();
      if (t.kind == Token::Kind::newline || t.kind == Token::Kind::eof ||
          (t.kind == Token::Kind::punct && t.text == ";"))
        break;
      if (t.kind != Token::Kind::ident && t.kind != Token::Kind::integer &&
          t.kind != Token::Kind::punct)
        fail_at(t, "expected a file path", {"path", "\"path\""});
      path += lx_.next().text;
    }
    if (path.empty())
      fail_at(lx_.peek(), "expected a file path", {"path", "\"path\""});
    return path;
  }

  // ---- command execution --------------------------------------------------

  static unsigned uarg(const Token& t, const char* what) {
    if (t.value > 1000000)
      throw structural_error(std::string(what) + " is out of range");
    return static_cast<unsigned>(t.value);
  }

  const Binding& lookup_run(const Token& name) {
    auto it = bindings_.find(name.text);
    if (it == bindings_.end())
      throw structural_error("unknown binding '" + name.text + "'");
    return it->second;
  }

  AlgebraPtr algebra_arg(const Token& name) {
    const Binding& b = lookup_run(name);
    if ((b.kind == Binding::Kind::base || b.kind == Binding::Kind::algebra) &&
        b.algebra)
      return b.algebra;
    throw structural_error("'" + name.text + "' does not name an algebra");
  }

  const AlgebraMorphism& morphism_arg(const Token& name) {
    const Binding& b = lookup_run(name);
    if (b.kind != Binding::Kind::morphism)
      throw structural_error("'" + name.text + "' does not name a morphism");
    return *b.morphism;
  }

  Polynomial element_arg(const Token& name, const AlgebraPtr& A) {
    const Binding& b = lookup_run(name);
    if (b.kind != Binding::Kind::element)
      throw structural_error("'" + name.text + "' does not name an element");
    if (b.home != A)
      throw structural_error("element '" + name.text +
                             "' lives in a different algebra");
    return *b.element;
  }

  const AlgebraMorphism& unique_morphism(const Token& src, const Token& tgt) {
    AlgebraPtr S = algebra_arg(src);
    AlgebraPtr T = algebra_arg(tgt);
    const AlgebraMorphism* found = nullptr;
    for (const auto& [name, b] : bindings_) {
      if (b.kind != Binding::Kind::morphism) continue;
      if (b.morphism->source() == S && b.morphism->target() == T) {
        if (found)
          throw structural_error("more than one declared morphism " + src.text +
                                 " -> " + tgt.text + "; sup needs exactly one");
        found = &*b.morphism;
      }
    }
    if (!found)
      throw structural_error("declare a morphism " + src.text + " -> " + tgt.text +
                             " before using sup");
    return *found;
  }

  std::string read_file(const std::string& arg) const {
    namespace fs = std::filesystem;
    fs::path p(arg);
    if (p.is_relative() && !opts_.base_dir.empty())
      p = fs::path(opts_.base_dir) / p;
    std::ifstream f(p, std::ios::binary);
    if (!f) throw structural_error("cannot read file '" + p.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  static ojson image_strings(const std::vector<Polynomial>& ps) {
    ojson a = ojson::array();
    for (const auto& p : ps) a.push_back(to_string(p));
    return a;
  }

  CmdResult run_frobtwist(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    unsigned n = uarg(cmd.args[1], "twist exponent");
    CmdResult r;
    r.rep["n"] = n;
    r.rep["twist"] = detail::presentation_ojson(frobenius_twist(A, n));
    return r;
  }

  CmdResult run_frobmap(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    unsigned n = uarg(cmd.args[1], "twist exponent");
    CmdResult r;
    r.rep["n"] = n;
    r.rep.update(detail::morphism_ojson(relative_frobenius(A, n)));
    return r;
  }

  CmdResult run_kernel(const Command& cmd) {
    KernelResult k = morphism_kernel(morphism_arg(cmd.args[0]), opts_.budget);
    return {detail::kernel_ojson(k), k.ok()};
  }

  CmdResult run_image(const Command& cmd) {
    ImageResult res = schematic_image(morphism_arg(cmd.args[0]), opts_.budget);
    CmdResult r;
    r.rep["status"] = res.ok() ? "ok" : to_string(res.status);
    r.definite = res.ok();
    if (res.ok()) {
      r.rep["image"] = detail::presentation_ojson(res.algebra);
      r.rep["projection_images"] = image_strings(res.projection->gen_images());
      r.rep["inclusion_images"] = image_strings(res.inclusion->gen_images());
    }
    return r;
  }

  CmdResult run_sup(const Command& cmd) {
    const AlgebraMorphism& e1 = unique_morphism(cmd.args[1], cmd.args[0]);
    const AlgebraMorphism& e2 = unique_morphism(cmd.args[2], cmd.args[0]);
    SupResult res = sup_factorization(e1, e2, opts_.budget);
    CmdResult r;
    r.rep["status"] = res.ok() ? "ok" : to_string(res.status);
    r.definite = res.ok();
    if (res.ok()) {
      r.rep["sup"] = detail::presentation_ojson(res.sup);
      r.rep["into_target"] = image_strings(res.into_target->gen_images());
      r.rep["from_left"] = image_strings(res.from_left->gen_images());
      r.rep["from_right"] = image_strings(res.from_right->gen_images());
    }
    return r;
  }

  CmdResult run_chain(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    unsigned n = uarg(cmd.args[1], "chain depth");
    if (n == 0) throw structural_error("chain needs at least one level");
    CmdResult r;
    ojson levels = ojson::array();
    std::optional<Subalgebra> prev;
    for (unsigned k = 1; k <= n; ++k) {
      Subalgebra B = frob_image(A, k, opts_.budget);
      if (B.cache_status() != GBStatus::ok) {
        ojson en;
        en["n"] = k;
        en["status"] = to_string(B.cache_status());
        levels.push_back(std::move(en));
        r.definite = false;
        break;
      }
      ojson en;
      en["n"] = k;
      en.update(detail::subalgebra_presentation_ojson(B.presentation(opts_.budget)));
      en["generators"] = image_strings(B.generators());
      if (prev) {
        // handed down: B_k contains every generator of B_{k+1}
        bool contains = true;
        Tri back = Tri::yes;
        for (const auto& g : B.generators()) {
          Tri m = prev->member(g).verdict;
          if (m == Tri::no) contains = false;
          if (m == Tri::indeterminate && back == Tri::yes) back = Tri::indeterminate;
        }
        if (!contains)
          throw engine_fault("Frobenius image chain is not decreasing");
        Tri fwd = Tri::yes;
        for (const auto& g : prev->generators()) {
          Tri m = B.member(g).verdict;
          if (m == Tri::no) fwd = Tri::no;
          else if (m == Tri::indeterminate && fwd == Tri::yes)
            fwd = Tri::indeterminate;
        }
        Tri equals = fwd == Tri::yes && back == Tri::yes
                         ? Tri::yes
                         : (fwd == Tri::no ? Tri::no : Tri::indeterminate);
        levels.back()["contains_next"] = "yes";
        levels.back()["equals_next"] = to_string(equals);
        if (equals == Tri::indeterminate) r.definite = false;
      }
      if (en["status"] != "ok") r.definite = false;
      levels.push_back(std::move(en));
      prev.emplace(std::move(B));
    }
    r.rep["levels"] = std::move(levels);
    return r;
  }

  CmdResult run_preperfect(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    unsigned steps = opts_.max_steps;
    std::vector<Polynomial> probes;
    std::vector<CoherentCertificate> certs;
    for (std::size_t i = 1; i < cmd.args.size();) {
      const std::string& kw = cmd.args[i].text;
      if (kw == "steps") {
        steps = uarg(cmd.args[i + 1], "steps");
        i += 2;
      } else if (kw == "probe") {
        probes.push_back(element_arg(cmd.args[i + 1], A));
        i += 2;
      } else {
        certs.push_back(
            {element_arg(cmd.args[i + 1], A), element_arg(cmd.args[i + 2], A)});
        i += 3;
      }
    }
    PreperfectionReport rep = preperfect(A, steps, probes, certs, opts_.budget);
    return {detail::preperfection_ojson(rep),
            rep.status == PreperfStatus::stabilized};
  }

  CmdResult run_certify(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    CoherentCertificate cert{element_arg(cmd.args[1], A),
                             element_arg(cmd.args[2], A)};
    unsigned levels = 3;
    if (cmd.args.size() > 3) levels = uarg(cmd.args[4], "levels");

    CmdResult r;
    bool valid = verify_coherent_certificate(A, cert);
    Polynomial target = A->reduce(cert.r * cert.a);
    r.rep["valid"] = valid;
    r.rep["target"] = to_string(target);
    r.rep["levels"] = levels;
    ojson member = ojson::array();
    if (valid) {
      // Coherence puts the target in every chain level without computing the
      // levels: r*a^{p^k} = r*a (verified below by reduction), and a^{p^k}
      // is a p^k-th power, hence lies in B_k; so does the base factor r.
      const std::uint64_t p = A->field().p();
      std::uint64_t q = 1;
      for (unsigned k = 1; k <= levels; ++k) {
        if (q > std::numeric_limits<std::uint64_t>::max() / (p * p))
          throw structural_error(
              "certify: level exponent overflows for this characteristic");
        q *= p;
        Polynomial lifted = A->reduce(cert.r * pow_reduced(*A, cert.a, q));
        if (!(lifted == target))
          throw engine_fault("coherent certificate failed its lifted identity");
        member.push_back("yes");
      }
    }
    r.rep["member_per_level"] = std::move(member);
    return r;
  }

  CmdResult run_unramified(const Command& cmd) {
    const Binding& b = lookup_run(cmd.args[0]);
    CmdResult r;
    if (b.kind == Binding::Kind::subalgebra) {
      Subalgebra::Presentation pres = b.sub->presentation(opts_.budget);
      if (!pres.ok() || !pres.algebra) {
        r.rep["verdict"] = "unknown";
        r.rep["etale"] = "indeterminate";
        r.rep["presentation"] = detail::subalgebra_presentation_ojson(pres);
        r.definite = false;
        return r;
      }
      UnramifiedReport rep = unramified_check(pres.algebra, opts_.budget);
      r.rep = detail::unramified_ojson(rep);
      r.rep["presentation"] = detail::subalgebra_presentation_ojson(pres);
      r.definite = rep.verdict != Ramification::unknown;
      return r;
    }
    AlgebraPtr B = algebra_arg(cmd.args[0]);
    UnramifiedReport rep = unramified_check(B, opts_.budget);
    r.rep = detail::unramified_ojson(rep);
    r.definite = rep.verdict != Ramification::unknown;
    return r;
  }

  CmdResult run_relperfect(const Command& cmd) {
    RelPerfReport rep = is_relatively_perfect(algebra_arg(cmd.args[0]), opts_.budget);
    return {detail::relperf_ojson(rep), rep.verdict != Tri::indeterminate};
  }

  CmdResult run_pi0(const Command& cmd) {
    ComponentDecomposition d =
        split_components(algebra_arg(cmd.args[0]), opts_.budget, opts_.seed);
    return {detail::decomposition_ojson(d),
            d.certified_disjoint && !d.best_effort};
  }

  CmdResult run_pi0_ring(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    ComponentDecomposition d = split_components(A, opts_.budget, opts_.seed);
    for (const auto& e : d.idempotents)
      if (!A->reduce(e.frobenius_power(1) - e).is_zero())
        throw engine_fault("computed idempotent is not Frobenius-fixed");
    Pi0Ring ring = pi0_ring(d);
    return {detail::pi0_ring_ojson(ring, d, Tri::yes),
            d.certified_disjoint && !d.best_effort};
  }

  CmdResult run_gpd_close(const Command& cmd) {
    Pregroupoid P = pregroupoid_from_json(read_file(cmd.file_arg));
    ClosureResult res = groupoid_closure(P);
    return {detail::closure_ojson(res), res.ok()};
  }

  CmdResult run_gpd_verify(const Command& cmd) {
    Pregroupoid P = pregroupoid_from_json(read_file(cmd.file_arg));
    std::vector<std::string> violations = validate_pregroupoid(P);
    CmdResult r;
    r.rep["valid"] = violations.empty();
    r.rep["violations"] = violations;
    if (violations.empty()) {
      std::vector<std::string> defects = bijectivity_defects(P);
      r.rep["bijectivity_defects"] = defects;
      r.rep["is_groupoid"] = defects.empty();
    } else {
      r.rep["bijectivity_defects"] = nullptr;
      r.rep["is_groupoid"] = false;
    }
    return r;
  }

  CmdResult run_crosscheck(const Command& cmd) {
    AlgebraPtr A = algebra_arg(cmd.args[0]);
    if (cmd.args.size() > 1) {
      AlgebraPtr C1 = algebra_arg(cmd.args[2]);
      const AlgebraMorphism& m1 = morphism_arg(cmd.args[4]);
      AlgebraPtr C2 = algebra_arg(cmd.args[6]);
      const AlgebraMorphism& m2 = morphism_arg(cmd.args[8]);
      if (m1.source() != C1 || m1.target() != A)
        throw structural_error("'" + cmd.args[4].text + "' is not a morphism " +
                               cmd.args[2].text + " -> " + cmd.args[0].text);
      if (m2.source() != C2 || m2.target() != A)
        throw structural_error("'" + cmd.args[8].text + "' is not a morphism " +
                               cmd.args[6].text + " -> " + cmd.args[0].text);
      CrosscheckReport rep = crosscheck_pi0_preperfection(m1, m2, opts_.budget);
      CmdResult r{detail::crosscheck_ojson(rep), rep.overall != "indeterminate"};
      r.rep["pi0_candidate"] = detail::presentation_ojson(C1);
      r.rep["preperf_candidate"] = detail::presentation_ojson(C2);
      return r;
    }

    if (A->base())
      throw structural_error(
          "crosscheck over a non-field base needs explicit candidates: "
          "crosscheck A pi0 C1 via m1 preperf C2 via m2");
    ComponentDecomposition d = split_components(A, opts_.budget, opts_.seed);
    Pi0Ring ring = pi0_ring(d);
    PreperfectionReport prep = preperfect(A, opts_.max_steps, {}, {}, opts_.budget);
    CmdResult r;
    if (prep.status != PreperfStatus::stabilized || !prep.candidate ||
        !prep.candidate->ok() || !prep.candidate->inclusion) {
      r.rep["verdict"] = "indeterminate";
      r.rep["reason"] = "the preperfection chain did not stabilize";
      r.rep["pi0_components"] = d.component_ideals.size();
      r.rep["preperfect_status"] =
          prep.status == PreperfStatus::truncated ? "truncated" : "not_stabilized";
      r.definite = false;
      return r;
    }
    CrosscheckReport rep =
        crosscheck_pi0_preperfection(*ring.inclusion, *prep.candidate->inclusion,
                                     opts_.budget);
    r.rep = detail::crosscheck_ojson(rep);
    r.definite = rep.overall != "indeterminate";
    r.rep["pi0_components"] = d.component_ideals.size();
    r.rep["preperfect_stabilized_at"] = prep.stabilized_at;
    r.rep["pi0_ring"] = detail::presentation_ojson(ring.algebra);
    r.rep["preperf_candidate"] =
        detail::subalgebra_presentation_ojson(*prep.candidate);
    return r;
  }

  Lexer lx_;
  const RunOptions& opts_;
  std::map<std::string, Binding> bindings_;
  std::vector<Command> commands_;
};

CmdResult Script::run(const Command& cmd) {
  const std::string& v = cmd.verb.text;
  if (v == "frobtwist") return run_frobtwist(cmd);
  if (v == "frobmap") return run_frobmap(cmd);
  if (v == "kernel") return run_kernel(cmd);
  if (v == "image") return run_image(cmd);
  if (v == "sup") return run_sup(cmd);
  if (v == "chain") return run_chain(cmd);
  if (v == "preperfect") return run_preperfect(cmd);
  if (v == "certify") return run_certify(cmd);
  if (v == "unramified") return run_unramified(cmd);
  if (v == "relperfect") return run_relperfect(cmd);
  if (v == "pi0") return run_pi0(cmd);
  if (v == "pi0-ring") return run_pi0_ring(cmd);
  if (v == "gpd-close") return run_gpd_close(cmd);
  if (v == "gpd-verify") return run_gpd_verify(cmd);
  if (v == "crosscheck") return run_crosscheck(cmd);
  throw engine_fault("unhandled command verb '" + v + "'");
}

} // namespace

int run_script(std::string_view text, const RunOptions& opts, std::ostream& out,
               std::ostream& err) {
  std::vector<ojson> reports;
  int exit_code = 0;
  auto emit = [&](ojson rep) {
    out << detail::dump_report(rep);
    reports.push_back(std::move(rep));
  };

  try {
    Script script(text, opts);
    for (const Command& cmd : script.commands()) {
      const std::string echo = command_echo(cmd);
      try {
        CmdResult res = script.run(cmd);
        res.rep["command"] = echo;
        if (!res.definite) exit_code = 2;
        emit(std::move(res.rep));
      } catch (const budget_exhausted& e) {
        ojson rep;
        rep["status"] = "budget_exhausted";
        rep["detail"] = e.what();
        rep["command"] = echo;
        exit_code = 2;
        emit(std::move(rep));
      } catch (const parse_error&) {
        throw;
      } catch (const engine_fault& e) {
        throw engine_fault("in '" + echo + "': " + e.what());
      } catch (const structural_error& e) {
        throw structural_error("in '" + echo + "': " + e.what());
      }
    }
  } catch (const budget_exhausted& e) {
    // a declaration ran out of budget: emit the status and stop
    ojson rep;
    rep["status"] = "budget_exhausted";
    rep["detail"] = e.what();
    emit(std::move(rep));
    exit_code = 2;
  } catch (const parse_error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const engine_fault& e) {
    err << "engine fault: " << e.what() << "\n";
    return 1;
  } catch (const structural_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (!opts.json_path.empty()) {
    std::ofstream f(opts.json_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << opts.json_path << "'\n";
      return 1;
    }
    ojson arr = ojson::array();
    for (auto& r : reports) arr.push_back(std::move(r));
    f << arr.dump(2) << "\n";
  }
  return exit_code;
}

} // namespace frobperf
