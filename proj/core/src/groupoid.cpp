#include "frobperf/groupoid.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include <json.hpp>

namespace frobperf {

namespace {

using Table = std::map<std::string, std::string>;

const std::string& at(const Table& tab, const std::string& key, const char* what) {
  auto it = tab.find(key);
  if (it == tab.end())
    throw structural_error(std::string(what) + " has no entry for '" + key + "'");
  return it->second;
}

std::string pair_id(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

std::string triple_id(const std::string& a, const std::string& b,
                      const std::string& c) {
  return "(" + a + "|" + b + "|" + c + ")";
}

} // namespace

std::string Pregroupoid::t(const std::string& r) const {
  return at(s, at(inv_r, r, "i_R"), "s");
}
std::string Pregroupoid::p2(const std::string& d) const {
  return at(inv_r, at(p1, at(inv_d, d, "i_D"), "p1"), "i_R");
}
std::string Pregroupoid::lambda_plus(const std::string& r) const {
  return at(inv_d, at(lambda, at(inv_r, r, "i_R"), "lambda"), "i_D");
}
std::string Pregroupoid::mu_plus(const std::string& r) const {
  return at(mu, at(inv_r, r, "i_R"), "mu");
}
std::string Pregroupoid::q23(const std::string& x) const {
  return at(inv_d, at(q12, at(inv_e, x, "i_E"), "q12"), "i_D");
}
std::string Pregroupoid::nu_plus(const std::string& x) const {
  return at(inv_d, at(nu, at(inv_e, x, "i_E"), "nu"), "i_D");
}

namespace {

std::set<std::string> id_set(const std::vector<std::string>& ids, const char* sort,
                             std::vector<std::string>& out) {
  std::set<std::string> s(ids.begin(), ids.end());
  if (s.size() != ids.size())
    out.push_back(std::string("duplicate id in ") + sort);
  return s;
}

void check_table(const Table& tab, const char* name, const std::set<std::string>& dom,
                 const char* dom_name, const std::set<std::string>& cod,
                 const char* cod_name, std::vector<std::string>& out) {
  for (const auto& x : dom)
    if (!tab.count(x))
      out.push_back(std::string(name) + " has no entry for " + dom_name + " '" + x +
                    "'");
  for (const auto& [k, v] : tab) {
    if (!dom.count(k))
      out.push_back(std::string(name) + " has an entry for unknown id '" + k + "'");
    else if (!cod.count(v))
      out.push_back(std::string(name) + "(" + k + ") = '" + v + "' is not in " +
                    cod_name);
  }
}

} // namespace

std::vector<std::string> validate_pregroupoid(const Pregroupoid& P) {
  std::vector<std::string> out;
  const auto U = id_set(P.objects, "U", out);
  const auto R = id_set(P.arrows, "R", out);
  const auto D = id_set(P.pairs, "D", out);
  const auto E = id_set(P.triples, "E", out);

  check_table(P.s, "s", R, "arrow", U, "U", out);
  check_table(P.e, "e", U, "object", R, "R", out);
  check_table(P.inv_r, "i_R", R, "arrow", R, "R", out);
  check_table(P.inv_d, "i_D", D, "pair", D, "D", out);
  check_table(P.inv_e, "i_E", E, "triple", E, "E", out);
  check_table(P.c, "c", D, "pair", R, "R", out);
  check_table(P.p1, "p1", D, "pair", R, "R", out);
  check_table(P.lambda, "lambda", R, "arrow", D, "D", out);
  check_table(P.mu, "mu", R, "arrow", D, "D", out);
  check_table(P.q12, "q12", E, "triple", D, "D", out);
  check_table(P.nu, "nu", E, "triple", D, "D", out);
  if (!out.empty()) return out; // pointwise checks need total tables

  auto eq = [&out](const char* law, const char* sort, const std::string& id,
                   const std::string& got, const std::string& want) {
    if (got != want)
      out.push_back(std::string(law) + " fails at " + sort + " '" + id + "': got '" +
                    got + "', want '" + want + "'");
  };

  for (const auto& u : P.objects) {
    eq("s(e(u)) = u", "object", u, P.s.at(P.e.at(u)), u);
    eq("t(e(u)) = u", "object", u, P.t(P.e.at(u)), u);
  }
  for (const auto& r : P.arrows) {
    eq("i(i(r)) = r", "arrow", r, P.inv_r.at(P.inv_r.at(r)), r);
    eq("p1(lambda(r)) = r", "arrow", r, P.p1.at(P.lambda.at(r)), r);
    eq("p2(lambda(r)) = e(s(r))", "arrow", r, P.p2(P.lambda.at(r)), P.e.at(P.s.at(r)));
    eq("c(lambda(r)) = r", "arrow", r, P.c.at(P.lambda.at(r)), r);
    eq("c(lambda+(r)) = r", "arrow", r, P.c.at(P.lambda_plus(r)), r);
    eq("p1(mu(r)) = i(r)", "arrow", r, P.p1.at(P.mu.at(r)), P.inv_r.at(r));
    eq("p2(mu(r)) = r", "arrow", r, P.p2(P.mu.at(r)), r);
    eq("c(mu(r)) = e(s(r))", "arrow", r, P.c.at(P.mu.at(r)), P.e.at(P.s.at(r)));
    eq("c(mu+(r)) = e(t(r))", "arrow", r, P.c.at(P.mu_plus(r)), P.e.at(P.t(r)));
  }
  for (const auto& d : P.pairs) {
    eq("i_D(i_D(d)) = d", "pair", d, P.inv_d.at(P.inv_d.at(d)), d);
    eq("s(p1(d)) = t(p2(d))", "pair", d, P.s.at(P.p1.at(d)), P.t(P.p2(d)));
    eq("s(c(d)) = s(p2(d))", "pair", d, P.s.at(P.c.at(d)), P.s.at(P.p2(d)));
    eq("t(c(d)) = t(p1(d))", "pair", d, P.t(P.c.at(d)), P.t(P.p1.at(d)));
    eq("c(i_D(d)) = i(c(d))", "pair", d, P.c.at(P.inv_d.at(d)), P.inv_r.at(P.c.at(d)));
  }
  for (const auto& x : P.triples) {
    eq("i_E(i_E(x)) = x", "triple", x, P.inv_e.at(P.inv_e.at(x)), x);
    eq("p2(q12(x)) = p1(q23(x))", "triple", x, P.p2(P.q12.at(x)), P.p1.at(P.q23(x)));
    eq("p1(nu(x)) = p1(q12(x))", "triple", x, P.p1.at(P.nu.at(x)), P.p1.at(P.q12.at(x)));
    eq("p2(nu(x)) = c(q23(x))", "triple", x, P.p2(P.nu.at(x)), P.c.at(P.q23(x)));
    eq("p1(nu+(x)) = c(q12(x))", "triple", x, P.p1.at(P.nu_plus(x)), P.c.at(P.q12.at(x)));
    eq("p2(nu+(x)) = p2(q23(x))", "triple", x, P.p2(P.nu_plus(x)), P.p2(P.q23(x)));
    eq("c(nu(x)) = c(nu+(x))", "triple", x, P.c.at(P.nu.at(x)), P.c.at(P.nu_plus(x)));
  }
  return out;
}

std::vector<std::string> validate_groupoid(const Groupoid& G) {
  std::vector<std::string> out;
  const auto U = id_set(G.objects, "U", out);
  const auto R = id_set(G.arrows, "R", out);
  check_table(G.s, "s", R, "arrow", U, "U", out);
  check_table(G.t, "t", R, "arrow", U, "U", out);
  check_table(G.e, "e", U, "object", R, "R", out);
  check_table(G.i, "i", R, "arrow", R, "R", out);
  if (!out.empty()) return out;

  for (const auto& [key, v] : G.c) {
    const auto& [a, b] = key;
    if (!R.count(a) || !R.count(b) || !R.count(v)) {
      out.push_back("composition table mentions an unknown arrow at (" + a + ", " + b +
                    ")");
      continue;
    }
    if (G.s.at(a) != G.t.at(b))
      out.push_back("composition defined for the non-composable pair (" + a + ", " + b +
                    ")");
  }
  if (!out.empty()) return out;

  auto eq = [&out](const std::string& law, const std::string& got,
                   const std::string& want) {
    if (got != want) out.push_back(law + ": got '" + got + "', want '" + want + "'");
  };
  auto comp = [&](const std::string& a,
                  const std::string& b) -> std::optional<std::string> {
    auto it = G.c.find({a, b});
    if (it == G.c.end()) {
      out.push_back("composition undefined for composable pair (" + a + ", " + b + ")");
      return std::nullopt;
    }
    return it->second;
  };

  for (const auto& u : G.objects) {
    eq("s(e(" + u + ")) = " + u, G.s.at(G.e.at(u)), u);
    eq("t(e(" + u + ")) = " + u, G.t.at(G.e.at(u)), u);
  }
  for (const auto& x : G.arrows) {
    eq("i(i(" + x + ")) = " + x, G.i.at(G.i.at(x)), x);
    eq("s(i(" + x + ")) = t(" + x + ")", G.s.at(G.i.at(x)), G.t.at(x));
    eq("t(i(" + x + ")) = s(" + x + ")", G.t.at(G.i.at(x)), G.s.at(x));
    if (auto v = comp(x, G.e.at(G.s.at(x))))
      eq("right identity at " + x, *v, x);
    if (auto v = comp(G.e.at(G.t.at(x)), x))
      eq("left identity at " + x, *v, x);
    if (auto v = comp(G.i.at(x), x))
      eq("i(" + x + ") . " + x + " = e(s(" + x + "))", *v, G.e.at(G.s.at(x)));
    if (auto v = comp(x, G.i.at(x)))
      eq(x + " . i(" + x + ") = e(t(" + x + "))", *v, G.e.at(G.t.at(x)));
  }
  for (const auto& a : G.arrows)
    for (const auto& b : G.arrows) {
      if (G.s.at(a) != G.t.at(b)) continue;
      auto ab = comp(a, b);
      if (!ab) continue;
      eq("s(" + a + " . " + b + ") = s(" + b + ")", G.s.at(*ab), G.s.at(b));
      eq("t(" + a + " . " + b + ") = t(" + a + ")", G.t.at(*ab), G.t.at(a));
      for (const auto& c0 : G.arrows) {
        if (G.s.at(b) != G.t.at(c0)) continue;
        auto bc = comp(b, c0);
        if (!bc) continue;
        auto l = comp(*ab, c0);
        auto r = comp(a, *bc);
        if (l && r)
          eq("associativity at (" + a + ", " + b + ", " + c0 + ")", *l, *r);
      }
    }
  return out;
}

Pregroupoid pregroupoid_of(const Groupoid& G) {
  Pregroupoid P;
  P.objects = G.objects;
  P.arrows = G.arrows;
  P.s = G.s;
  P.e = G.e;
  P.inv_r = G.i;
  auto comp = [&G](const std::string& a, const std::string& b) -> const std::string& {
    auto it = G.c.find({a, b});
    if (it == G.c.end())
      throw structural_error("groupoid composition undefined for (" + a + ", " + b +
                             ")");
    return it->second;
  };
  for (const auto& a : G.arrows)
    for (const auto& b : G.arrows) {
      if (G.s.at(a) != G.t.at(b)) continue;
      std::string id = pair_id(a, b);
      P.pairs.push_back(id);
      P.p1[id] = a;
      P.c[id] = comp(a, b);
      P.inv_d[id] = pair_id(G.i.at(b), G.i.at(a));
    }
  for (const auto& r : G.arrows) {
    P.lambda[r] = pair_id(r, G.e.at(G.s.at(r)));
    P.mu[r] = pair_id(G.i.at(r), r);
  }
  for (const auto& a : G.arrows)
    for (const auto& b : G.arrows) {
      if (G.s.at(a) != G.t.at(b)) continue;
      for (const auto& c0 : G.arrows) {
        if (G.s.at(b) != G.t.at(c0)) continue;
        std::string id = triple_id(a, b, c0);
        P.triples.push_back(id);
        P.q12[id] = pair_id(a, b);
        P.nu[id] = pair_id(a, comp(b, c0));
        P.inv_e[id] = triple_id(G.i.at(c0), G.i.at(b), G.i.at(a));
      }
    }
  return P;
}

std::vector<std::string> bijectivity_defects(const Pregroupoid& P) {
  std::vector<std::string> out;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> by_pair;
  for (const auto& d : P.pairs) by_pair[{P.p1.at(d), P.p2(d)}].push_back(d);
  for (const auto& a : P.arrows)
    for (const auto& b : P.arrows) {
      if (P.s.at(a) != P.t(b)) continue;
      auto it = by_pair.find({a, b});
      if (it == by_pair.end())
        out.push_back("(p1,p2) misses the composable pair (" + a + ", " + b + ")");
      else if (it->second.size() > 1)
        out.push_back("(p1,p2) identifies '" + it->second[0] + "' and '" +
                      it->second[1] + "'");
    }

  std::map<std::pair<std::string, std::string>, std::vector<std::string>> by_dd;
  for (const auto& x : P.triples) by_dd[{P.q12.at(x), P.q23(x)}].push_back(x);
  for (const auto& d1 : P.pairs)
    for (const auto& d2 : P.pairs) {
      if (P.p2(d1) != P.p1.at(d2)) continue;
      auto it = by_dd.find({d1, d2});
      if (it == by_dd.end())
        out.push_back("(q12,q23) misses the compatible pair (" + d1 + ", " + d2 + ")");
      else if (it->second.size() > 1)
        out.push_back("(q12,q23) identifies '" + it->second[0] + "' and '" +
                      it->second[1] + "'");
    }
  return out;
}

const char* to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::ok: return "ok";
    case ClosureStatus::iteration_limit: return "iteration_limit";
    case ClosureStatus::size_limit: return "size_limit";
  }
  return "unknown";
}

namespace {

// The closure engine: arrows are nodes in a union-find; comp_ holds the
// (partial, growing) composition table on class representatives. Every
// identification performed is forced in any groupoid receiving P, so the
// quotient is the colimit of the iterated pushouts.
class ClosureEngine {
public:
  ClosureEngine(const Pregroupoid& P, unsigned max_iterations, std::size_t max_arrows)
      : P_(P), max_iterations_(max_iterations), max_arrows_(max_arrows) {}

  ClosureResult run() {
    init();
    ClosureResult res;
    try {
      for (unsigned iter = 0;; ++iter) {
        canonicalize();
        if (closed()) {
          res.status = ClosureStatus::ok;
          res.iterations = iter;
          break;
        }
        if (iter == max_iterations_) {
          res.status = ClosureStatus::iteration_limit;
          res.iterations = iter;
          break;
        }
        changed_ = false;
        res.iterations = iter + 1;
        round();
        if (!changed_) throw engine_fault("closure round stalled before closure");
      }
    } catch (const CapHit&) {
      res.status = ClosureStatus::size_limit;
      canonicalize();
    }
    finalize(res);
    return res;
  }

private:
  struct CapHit {};
  struct Node {
    int src, tgt;        // object indices
    bool original;       // true: pa indexes P.arrows; false: pa, pb are node ids
    int pa = -1, pb = -1;
  };

  void init() {
    for (std::size_t k = 0; k < P_.objects.size(); ++k)
      obj_index_[P_.objects[k]] = static_cast<int>(k);
    for (const auto& r : P_.arrows) {
      int id = create_node(obj_index_.at(P_.s.at(r)), obj_index_.at(P_.t(r)), true,
                           static_cast<int>(node_of_.size()), -1);
      node_of_[r] = id;
    }
    for (const auto& r : P_.arrows)
      inv_[node_of_.at(r)] = node_of_.at(P_.inv_r.at(r));
    ident_.resize(P_.objects.size());
    for (std::size_t k = 0; k < P_.objects.size(); ++k)
      ident_[k] = node_of_.at(P_.e.at(P_.objects[k]));
    // The pair identifications: c(d) and the formal composite of the
    // projections are one arrow. Unit and inverse laws for original arrows
    // are instances at d = lambda(r), lambda+(r), mu(r), mu+(r).
    for (const auto& d : P_.pairs)
      set_comp(find(node_of_.at(P_.p1.at(d))), find(node_of_.at(P_.p2(d))),
               find(node_of_.at(P_.c.at(d))));
  }

  int create_node(int src, int tgt, bool original, int pa, int pb) {
    if (nodes_.size() >= max_arrows_) throw CapHit{};
    nodes_.push_back({src, tgt, original, pa, pb});
    parent_.push_back(static_cast<int>(nodes_.size()) - 1);
    inv_.push_back(-1);
    changed_ = true;
    return static_cast<int>(nodes_.size()) - 1;
  }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void merge(int x, int y) {
    std::vector<std::pair<int, int>> work{{x, y}};
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (nodes_[a].src != nodes_[b].src || nodes_[a].tgt != nodes_[b].tgt)
        throw engine_fault("closure identified arrows with different endpoints");
      parent_[b] = a;
      changed_ = true;
      if (inv_[b] != -1) {
        if (inv_[a] == -1)
          inv_[a] = inv_[b];
        else
          work.push_back({inv_[a], inv_[b]});
      }
    }
  }

  // comp_[(a,b)] is "a after b"; keys composable: src(a) == tgt(b).
  void set_comp(int a, int b, int v) {
    a = find(a);
    b = find(b);
    v = find(v);
    auto it = comp_.find({a, b});
    if (it == comp_.end()) {
      comp_.emplace(std::make_pair(a, b), v);
      changed_ = true;
    } else if (find(it->second) != v) {
      merge(it->second, v);
    }
  }

  int get_or_create_comp(int a, int b) {
    a = find(a);
    b = find(b);
    auto it = comp_.find({a, b});
    if (it != comp_.end()) return find(it->second);
    int id = create_node(nodes_[b].src, nodes_[a].tgt, false, a, b);
    comp_.emplace(std::make_pair(a, b), id);
    return id;
  }

  void canonicalize() {
    bool stable = false;
    while (!stable) {
      stable = true;
      std::map<std::pair<int, int>, int> fresh;
      for (const auto& [key, v] : comp_) {
        std::pair<int, int> k{find(key.first), find(key.second)};
        int w = find(v);
        auto it = fresh.find(k);
        if (it == fresh.end()) {
          fresh.emplace(k, w);
        } else if (find(it->second) != w) {
          merge(it->second, w);
          stable = false;
        }
      }
      comp_ = std::move(fresh);
    }
  }

  std::vector<int> reps() {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(nodes_.size()); ++x)
      if (find(x) == x) out.push_back(x);
    return out;
  }

  std::optional<int> comp_lookup(int a, int b) {
    auto it = comp_.find({find(a), find(b)});
    if (it == comp_.end()) return std::nullopt;
    return find(it->second);
  }

  bool closed() {
    const std::vector<int> xs = reps();
    for (int x : xs) {
      if (inv_[x] == -1) return false;
      int es = find(ident_[nodes_[x].src]);
      int et = find(ident_[nodes_[x].tgt]);
      int ix = find(inv_[x]);
      if (comp_lookup(x, es) != x || comp_lookup(et, x) != x) return false;
      if (comp_lookup(ix, x) != es || comp_lookup(x, ix) != et) return false;
    }
    for (int x : xs)
      for (int y : xs) {
        if (nodes_[x].src != nodes_[y].tgt) continue;
        auto xy = comp_lookup(x, y);
        if (!xy) return false;
        for (int z : xs) {
          if (nodes_[y].src != nodes_[z].tgt) continue;
          auto yz = comp_lookup(y, z);
          if (!yz) return false;
          auto l = comp_lookup(*xy, z);
          auto r = comp_lookup(x, *yz);
          if (!l || !r || *l != *r) return false;
        }
      }
    return true;
  }

  void round() {
    // Unit laws.
    for (int x : reps()) {
      if (find(x) != x) continue;
      set_comp(x, find(ident_[nodes_[x].src]), x);
      set_comp(find(ident_[nodes_[find(x)].tgt]), find(x), find(x));
    }
    canonicalize();
    // Inverses: assign (inverse of a composite is the reversed composite of
    // the inverses), then impose the inverse laws.
    for (int x = 0; x < static_cast<int>(nodes_.size()); ++x) {
      if (find(x) != x || inv_[x] != -1) continue;
      const Node& n = nodes_[x];
      if (n.original) throw engine_fault("original closure arrow without inverse");
      int ia = find(inv_[find(n.pa)]);
      int ib = find(inv_[find(n.pb)]);
      int w = get_or_create_comp(ib, ia);
      int rx = find(x);
      if (inv_[rx] == -1) {
        inv_[rx] = w;
        changed_ = true;
      } else if (find(inv_[rx]) != find(w)) {
        merge(inv_[rx], w);
      }
      int rw = find(w);
      if (inv_[rw] == -1) {
        inv_[rw] = rx;
        changed_ = true;
      } else if (find(inv_[rw]) != find(rx)) {
        merge(inv_[rw], rx);
      }
    }
    canonicalize();
    for (int x : reps()) {
      int rx = find(x);
      int ix = find(inv_[rx]);
      set_comp(ix, rx, find(ident_[nodes_[rx].src]));
      set_comp(rx, ix, find(ident_[nodes_[rx].tgt]));
    }
    canonicalize();
    // Adjoin all missing formal composites (the pushout's new arrows), then
    // impose associativity on every composable triple.
    {
      const std::vector<int> xs = reps();
      for (int a : xs)
        for (int b : xs) {
          if (find(a) != a || find(b) != b) continue;
          if (nodes_[a].src != nodes_[b].tgt) continue;
          get_or_create_comp(a, b);
        }
    }
    canonicalize();
    {
      const std::vector<int> xs = reps();
      for (int x : xs)
        for (int y : xs) {
          if (nodes_[find(x)].src != nodes_[find(y)].tgt) continue;
          for (int z : xs) {
            if (nodes_[find(y)].src != nodes_[find(z)].tgt) continue;
            int xy = get_or_create_comp(find(x), find(y));
            int yz = get_or_create_comp(find(y), find(z));
            int l = get_or_create_comp(find(xy), find(z));
            int r = get_or_create_comp(find(x), find(yz));
            if (find(l) != find(r)) merge(l, r);
          }
        }
    }
    canonicalize();
  }

  void finalize(ClosureResult& res) {
    // Name classes: the least original name when the class has one,
    // otherwise w1, w2, ... in creation order.
    std::map<int, std::string> original_name;
    for (const auto& r : P_.arrows) {
      int rep = find(node_of_.at(r));
      auto it = original_name.find(rep);
      if (it == original_name.end() || r < it->second) original_name[rep] = r;
    }
    const std::vector<int> xs = reps();
    std::set<std::string> used;
    for (const auto& [rep, nm] : original_name) used.insert(nm);
    std::map<int, std::string> name;
    unsigned next = 1;
    for (int x : xs) {
      auto it = original_name.find(x);
      if (it != original_name.end()) {
        name[x] = it->second;
      } else {
        std::string cand;
        do {
          cand = "w" + std::to_string(next++);
        } while (used.count(cand));
        used.insert(cand);
        name[x] = cand;
      }
    }

    Groupoid& G = res.groupoid;
    G.objects = P_.objects;
    for (int x : xs) {
      const std::string& nm = name.at(x);
      G.arrows.push_back(nm);
      G.s[nm] = P_.objects[nodes_[x].src];
      G.t[nm] = P_.objects[nodes_[x].tgt];
      if (inv_[x] != -1) G.i[nm] = name.at(find(inv_[x]));
      ArrowOrigin org;
      if (nodes_[x].original) {
        org.kind = ArrowOrigin::Kind::original;
        org.a = P_.arrows[nodes_[x].pa];
      } else {
        org.kind = ArrowOrigin::Kind::composite;
        org.a = name.at(find(nodes_[x].pa));
        org.b = name.at(find(nodes_[x].pb));
      }
      res.origins[nm] = org;
    }
    for (std::size_t k = 0; k < P_.objects.size(); ++k)
      G.e[P_.objects[k]] = name.at(find(ident_[k]));
    for (const auto& [key, v] : comp_)
      G.c[{name.at(find(key.first)), name.at(find(key.second))}] = name.at(find(v));
    for (const auto& r : P_.arrows) res.arrow_map[r] = name.at(find(node_of_.at(r)));
  }

  const Pregroupoid& P_;
  unsigned max_iterations_;
  std::size_t max_arrows_;
  std::map<std::string, int> obj_index_;
  std::map<std::string, int> node_of_; // original arrow -> node
  std::vector<Node> nodes_;
  std::vector<int> parent_;
  std::vector<int> inv_; // node -> inverse node, -1 unknown; kept on reps
  std::vector<int> ident_; // object index -> identity node
  std::map<std::pair<int, int>, int> comp_;
  bool changed_ = false;
};

} // namespace

ClosureResult groupoid_closure(const Pregroupoid& P, unsigned max_iterations,
                               std::size_t max_arrows) {
  std::vector<std::string> bad = validate_pregroupoid(P);
  if (!bad.empty())
    throw structural_error("groupoid closure of an invalid pregroupoid: " + bad.front());
  return ClosureEngine(P, max_iterations, max_arrows).run();
}

std::vector<std::string> validate_pregroupoid_morphism(const Pregroupoid& P,
                                                       const Pregroupoid& Q,
                                                       const PregroupoidMorphism& f) {
  std::vector<std::string> out;
  std::vector<std::string> dummy;
  const auto QU = id_set(Q.objects, "U'", dummy);
  const auto QR = id_set(Q.arrows, "R'", dummy);
  const auto QD = id_set(Q.pairs, "D'", dummy);
  const auto QE = id_set(Q.triples, "E'", dummy);
  const auto PU = id_set(P.objects, "U", dummy);
  const auto PR = id_set(P.arrows, "R", dummy);
  const auto PD = id_set(P.pairs, "D", dummy);
  const auto PE = id_set(P.triples, "E", dummy);
  check_table(f.on_objects, "f_U", PU, "object", QU, "U'", out);
  check_table(f.on_arrows, "f_R", PR, "arrow", QR, "R'", out);
  check_table(f.on_pairs, "f_D", PD, "pair", QD, "D'", out);
  check_table(f.on_triples, "f_E", PE, "triple", QE, "E'", out);
  if (!out.empty()) return out;

  auto eq = [&out](const char* square, const std::string& id, const std::string& got,
                   const std::string& want) {
    if (got != want)
      out.push_back(std::string("square ") + square + " fails at '" + id + "': got '" +
                    got + "', want '" + want + "'");
  };
  const auto& fU = f.on_objects;
  const auto& fR = f.on_arrows;
  const auto& fD = f.on_pairs;
  const auto& fE = f.on_triples;
  for (const auto& u : P.objects) eq("e", u, fR.at(P.e.at(u)), Q.e.at(fU.at(u)));
  for (const auto& r : P.arrows) {
    eq("s", r, fU.at(P.s.at(r)), Q.s.at(fR.at(r)));
    eq("i_R", r, fR.at(P.inv_r.at(r)), Q.inv_r.at(fR.at(r)));
    eq("lambda", r, fD.at(P.lambda.at(r)), Q.lambda.at(fR.at(r)));
    eq("mu", r, fD.at(P.mu.at(r)), Q.mu.at(fR.at(r)));
  }
  for (const auto& d : P.pairs) {
    eq("c", d, fR.at(P.c.at(d)), Q.c.at(fD.at(d)));
    eq("p1", d, fR.at(P.p1.at(d)), Q.p1.at(fD.at(d)));
    eq("i_D", d, fD.at(P.inv_d.at(d)), Q.inv_d.at(fD.at(d)));
  }
  for (const auto& x : P.triples) {
    eq("q12", x, fD.at(P.q12.at(x)), Q.q12.at(fE.at(x)));
    eq("nu", x, fD.at(P.nu.at(x)), Q.nu.at(fE.at(x)));
    eq("i_E", x, fE.at(P.inv_e.at(x)), Q.inv_e.at(fE.at(x)));
  }
  return out;
}

PregroupoidMorphism morphism_into_groupoid(
    const Pregroupoid& P, const Groupoid& G,
    const std::map<std::string, std::string>& on_objects,
    const std::map<std::string, std::string>& on_arrows) {
  PregroupoidMorphism f;
  f.on_objects = on_objects;
  f.on_arrows = on_arrows;
  auto image = [&on_arrows](const std::string& r) -> const std::string& {
    return at(on_arrows, r, "arrow table");
  };
  for (const auto& u : P.objects) at(on_objects, u, "object table");
  for (const auto& d : P.pairs) {
    const std::string& a = image(P.p1.at(d));
    const std::string& b = image(P.p2(d));
    if (G.s.at(a) != G.t.at(b))
      throw structural_error("image pair of '" + d + "' is not composable: (" + a +
                             ", " + b + ")");
    f.on_pairs[d] = pair_id(a, b);
  }
  for (const auto& x : P.triples) {
    const std::string& a = image(P.p1.at(P.q12.at(x)));
    const std::string& b = image(P.p2(P.q12.at(x)));
    const std::string& c0 = image(P.p2(P.q23(x)));
    if (G.s.at(a) != G.t.at(b) || G.s.at(b) != G.t.at(c0))
      throw structural_error("image triple of '" + x + "' is not composable");
    f.on_triples[x] = triple_id(a, b, c0);
  }
  return f;
}

PregroupoidMorphism canonical_morphism(const Pregroupoid& P,
                                       const ClosureResult& closure) {
  std::map<std::string, std::string> on_objects;
  for (const auto& u : P.objects) on_objects[u] = u;
  return morphism_into_groupoid(P, closure.groupoid, on_objects, closure.arrow_map);
}

FactorizationResult factor_through_closure(
    const Pregroupoid& P, const ClosureResult& closure, const Groupoid& target,
    const std::map<std::string, std::string>& on_objects,
    const std::map<std::string, std::string>& on_arrows) {
  FactorizationResult res;
  if (!closure.ok()) {
    res.exists = Tri::indeterminate;
    res.detail = std::string("closure incomplete: ") + to_string(closure.status);
    return res;
  }
  auto fail = [&res](std::string why) {
    res.exists = Tri::no;
    res.detail = std::move(why);
    res.on_objects.clear();
    res.on_arrows.clear();
    return res;
  };

  // The input must be a morphism P -> target.
  for (const auto& u : P.objects) {
    auto it = on_objects.find(u);
    if (it == on_objects.end() || !target.e.count(it->second))
      return fail("object '" + u + "' has no valid image");
  }
  for (const auto& r : P.arrows) {
    auto it = on_arrows.find(r);
    if (it == on_arrows.end() || !target.s.count(it->second))
      return fail("arrow '" + r + "' has no valid image");
    const std::string& fr = it->second;
    if (target.s.at(fr) != on_objects.at(P.s.at(r)) ||
        target.t.at(fr) != on_objects.at(P.t(r)))
      return fail("arrow '" + r + "' image has wrong endpoints");
    if (on_arrows.at(P.inv_r.at(r)) != target.i.at(fr))
      return fail("arrow '" + r + "' image does not respect inversion");
  }
  for (const auto& u : P.objects)
    if (on_arrows.at(P.e.at(u)) != target.e.at(on_objects.at(u)))
      return fail("identity of '" + u + "' image is not the target identity");
  for (const auto& d : P.pairs) {
    auto it = target.c.find({on_arrows.at(P.p1.at(d)), on_arrows.at(P.p2(d))});
    if (it == target.c.end() || it->second != on_arrows.at(P.c.at(d)))
      return fail("pair '" + d + "' does not map to the composite of its projections");
  }

  // Forced propagation along origins; closure.groupoid.arrows is ordered so
  // that composite parents come first.
  std::map<std::string, std::string> h;
  for (const auto& x : closure.groupoid.arrows) {
    const ArrowOrigin& org = closure.origins.at(x);
    if (org.kind == ArrowOrigin::Kind::original) {
      h[x] = on_arrows.at(org.a);
    } else {
      const std::string& ha = h.at(org.a);
      const std::string& hb = h.at(org.b);
      auto it = target.c.find({ha, hb});
      if (it == target.c.end())
        return fail("propagated images of '" + x + "' are not composable in the target");
      h[x] = it->second;
    }
  }

  // Verification: h commutes with the canonical map and is a groupoid
  // morphism on every table entry.
  for (const auto& [r, x] : closure.arrow_map)
    if (h.at(x) != on_arrows.at(r))
      return fail("canonical triangle fails at arrow '" + r + "'");
  const Groupoid& G = closure.groupoid;
  for (const auto& x : G.arrows) {
    if (target.s.at(h.at(x)) != on_objects.at(G.s.at(x)) ||
        target.t.at(h.at(x)) != on_objects.at(G.t.at(x)))
      return fail("endpoint square fails at closure arrow '" + x + "'");
    if (h.at(G.i.at(x)) != target.i.at(h.at(x)))
      return fail("inversion square fails at closure arrow '" + x + "'");
  }
  for (const auto& u : G.objects)
    if (h.at(G.e.at(u)) != target.e.at(on_objects.at(u)))
      return fail("identity square fails at object '" + u + "'");
  for (const auto& [key, v] : G.c) {
    auto it = target.c.find({h.at(key.first), h.at(key.second)});
    if (it == target.c.end() || it->second != h.at(v))
      return fail("composition square fails at (" + key.first + ", " + key.second +
                  ")");
  }

  res.exists = Tri::yes;
  res.on_objects = on_objects;
  res.on_arrows = std::move(h);
  res.detail =
      "unique: every closure arrow is an iterated composite of canonical images";
  return res;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> str_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw structural_error(std::string("expected a string array at \"") + key + "\"");
  std::vector<std::string> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_string())
      throw structural_error(std::string("non-string id in \"") + key + "\"");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Table str_table(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object())
    throw structural_error(std::string("expected an id table at \"") + key + "\"");
  Table out;
  for (const auto& [k, v] : j.at(key).items()) {
    if (!v.is_string())
      throw structural_error(std::string("non-string entry in table \"") + key + "\"");
    out[k] = v.get<std::string>();
  }
  return out;
}

ordered_json table_json(const Table& t) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : t) out[k] = v;
  return out;
}

} // namespace

Pregroupoid pregroupoid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw structural_error(std::string("pregroupoid file: ") + e.what());
  }
  Pregroupoid P;
  P.objects = str_array(j, "U");
  P.arrows = str_array(j, "R");
  P.pairs = str_array(j, "D");
  P.triples = str_array(j, "E");
  P.s = str_table(j, "s");
  P.e = str_table(j, "e");
  P.inv_r = str_table(j, "i_R");
  P.inv_d = str_table(j, "i_D");
  P.inv_e = str_table(j, "i_E");
  P.c = str_table(j, "c");
  P.p1 = str_table(j, "p1");
  P.lambda = str_table(j, "lambda");
  P.mu = str_table(j, "mu");
  P.q12 = str_table(j, "q12");
  P.nu = str_table(j, "nu");
  return P;
}

std::string pregroupoid_to_json(const Pregroupoid& P) {
  ordered_json j;
  j["U"] = P.objects;
  j["R"] = P.arrows;
  j["D"] = P.pairs;
  j["E"] = P.triples;
  j["s"] = table_json(P.s);
  j["e"] = table_json(P.e);
  j["i_R"] = table_json(P.inv_r);
  j["i_D"] = table_json(P.inv_d);
  j["i_E"] = table_json(P.inv_e);
  j["c"] = table_json(P.c);
  j["p1"] = table_json(P.p1);
  j["lambda"] = table_json(P.lambda);
  j["mu"] = table_json(P.mu);
  j["q12"] = table_json(P.q12);
  j["nu"] = table_json(P.nu);
  return j.dump(2);
}

Groupoid groupoid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw structural_error(std::string("groupoid file: ") + e.what());
  }
  Groupoid G;
  G.objects = str_array(j, "U");
  G.arrows = str_array(j, "R");
  G.s = str_table(j, "s");
  G.t = str_table(j, "t");
  G.e = str_table(j, "e");
  G.i = str_table(j, "i");
  if (!j.contains("c") || !j.at("c").is_object())
    throw structural_error("expected a nested composition table at \"c\"");
  for (const auto& [a, row] : j.at("c").items()) {
    if (!row.is_object())
      throw structural_error("composition row for '" + a + "' is not a table");
    for (const auto& [b, v] : row.items()) {
      if (!v.is_string())
        throw structural_error("non-string composite at c[" + a + "][" + b + "]");
      G.c[{a, b}] = v.get<std::string>();
    }
  }
  return G;
}

std::string groupoid_to_json(const Groupoid& G) {
  ordered_json j;
  j["U"] = G.objects;
  j["R"] = G.arrows;
  j["s"] = table_json(G.s);
  j["t"] = table_json(G.t);
  j["e"] = table_json(G.e);
  j["i"] = table_json(G.i);
  ordered_json c = ordered_json::object();
  for (const auto& [key, v] : G.c) c[key.first][key.second] = v;
  j["c"] = c;
  return j.dump(2);
}

} // namespace frobperf
