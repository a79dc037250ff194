#include "unifact/factorisation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace unifact {

namespace {

std::string coords_text(const std::vector<unsigned>& cs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i] + 1;
  return os.str();
}

// Deterministic scan for a tuple failing `covered`: by number of
// non-identity coordinates, then positions, then values, lexicographically.
std::optional<Tuple> find_uncovered(const DirectPower& m, std::uint64_t budget,
                                    const std::function<bool(const Tuple&)>& covered) {
  const unsigned k = m.k;
  const Elem n = static_cast<Elem>(m.base->order());
  std::uint64_t tried = 0;
  if (n < 2) return std::nullopt;
  for (unsigned w = 1; w <= k; ++w) {
    std::vector<unsigned> pos(w);
    for (unsigned i = 0; i < w; ++i) pos[i] = i;
    while (true) {
      std::vector<Elem> val(w, 1);
      while (true) {
        if (tried++ >= budget) return std::nullopt;
        Tuple t(k, 0);
        for (unsigned i = 0; i < w; ++i) t[pos[i]] = val[i];
        if (!covered(t)) return t;
        unsigned i = w;
        while (i > 0 && ++val[i - 1] == n) val[--i] = 1;
        if (i == 0) break;
      }
      int i = static_cast<int>(w) - 1;
      while (i >= 0 && pos[i] == k - w + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++pos[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return std::nullopt;
}

FactorisationVerdict verdict_from_orders(const DirectPower& m, BigInt xo, BigInt yo, BigInt io) {
  FactorisationVerdict v;
  v.x_order = std::move(xo);
  v.y_order = std::move(yo);
  v.intersection_order = std::move(io);
  v.product_order = v.x_order * v.y_order / v.intersection_order;
  v.ambient_order = m.order();
  v.holds = v.x_order * v.y_order == v.intersection_order * v.ambient_order;
  return v;
}

}  // namespace

bool in_product(const LinkedSubgroup& x, const LinkedSubgroup& y, const Tuple& m) {
  const DirectPower& amb = x.ambient();
  const FiniteGroup& g = *amb.base;
  if (m.size() != amb.k) return false;
  // m = x y coordinatewise. Each coordinate ties one X block to one Y block;
  // fixing an X root value fixes every value in its connected component.
  struct Where {
    std::size_t block, pos;
  };
  std::vector<Where> wx(amb.k), wy(amb.k);
  for (std::size_t b = 0; b < x.blocks().size(); ++b)
    for (std::size_t p = 0; p < x.blocks()[b].coords.size(); ++p) wx[x.blocks()[b].coords[p]] = {b, p};
  for (std::size_t b = 0; b < y.blocks().size(); ++b)
    for (std::size_t p = 0; p < y.blocks()[b].coords.size(); ++p) wy[y.blocks()[b].coords[p]] = {b, p};
  auto inverses = [](const LinkedSubgroup& l) {
    std::vector<std::vector<Automorphism>> out;
    for (const auto& b : l.blocks()) {
      out.emplace_back();
      for (const auto& a : b.from_root) out.back().push_back(a.inverse());
    }
    return out;
  };
  const auto inv_x = inverses(x), inv_y = inverses(y);
  auto allowed = [](const LinkedSubgroup::Block& b, Elem v) {
    return std::binary_search(b.root_values.begin(), b.root_values.end(), v);
  };

  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<bool> done_x(x.blocks().size(), false);
  for (std::size_t start = 0; start < x.blocks().size(); ++start) {
    if (done_x[start]) continue;
    bool component_ok = false;
    std::vector<std::size_t> comp_x, comp_y;
    for (Elem p0 : x.blocks()[start].root_values) {
      std::vector<Elem> px(x.blocks().size(), unset), py(y.blocks().size(), unset);
      comp_x.assign(1, start);
      comp_y.clear();
      px[start] = p0;
      bool ok = true;
      // Alternate sides: comp_x/comp_y act as queues.
      std::size_t qx = 0, qy = 0;
      while (ok && (qx < comp_x.size() || qy < comp_y.size())) {
        if (qx < comp_x.size()) {
          const std::size_t b = comp_x[qx++];
          const auto& blk = x.blocks()[b];
          for (std::size_t p = 0; ok && p < blk.coords.size(); ++p) {
            const unsigned c = blk.coords[p];
            const Elem yc = g.mul(g.inv(blk.from_root[p](px[b])), m[c]);
            const auto [yb, ypos] = wy[c];
            const Elem q = inv_y[yb][ypos](yc);
            if (py[yb] == unset) {
              if (!allowed(y.blocks()[yb], q)) ok = false;
              py[yb] = q;
              comp_y.push_back(yb);
            } else if (py[yb] != q) {
              ok = false;
            }
          }
        } else {
          const std::size_t b = comp_y[qy++];
          const auto& blk = y.blocks()[b];
          for (std::size_t p = 0; ok && p < blk.coords.size(); ++p) {
            const unsigned c = blk.coords[p];
            const Elem xc = g.mul(m[c], g.inv(blk.from_root[p](py[b])));
            const auto [xb, xpos] = wx[c];
            const Elem q = inv_x[xb][xpos](xc);
            if (px[xb] == unset) {
              if (!allowed(x.blocks()[xb], q)) ok = false;
              px[xb] = q;
              comp_x.push_back(xb);
            } else if (px[xb] != q) {
              ok = false;
            }
          }
        }
      }
      if (ok) {
        component_ok = true;
        break;
      }
    }
    if (!component_ok) return false;
    // The component's blocks do not depend on the root value tried.
    for (std::size_t b : comp_x) done_x[b] = true;
  }
  return true;
}

FactorisationVerdict product_covers(const LinkedSubgroup& x, const LinkedSubgroup& y, std::uint64_t witness_budget) {
  if (!(x.ambient() == y.ambient())) throw Error(ErrorKind::invalid_input, "subgroups live in different direct powers");
  auto v = verdict_from_orders(x.ambient(), x.order(), y.order(), x.intersect(y).order());
  if (!v.holds && witness_budget > 0)
    v.witness = find_uncovered(x.ambient(), witness_budget, [&](const Tuple& t) { return in_product(x, y, t); });
  return v;
}

FactorisationVerdict product_covers(const StripProduct& x, const StripProduct& y, std::uint64_t witness_budget) {
  return product_covers(x.to_linked(), y.to_linked(), witness_budget);
}

FactorisationVerdict product_covers(const SubgroupHandle& x, const SubgroupHandle& y, std::uint64_t witness_budget,
                                    std::size_t cap) {
  if (!(x.ambient() == y.ambient())) throw Error(ErrorKind::invalid_input, "subgroups live in different direct powers");
  const auto ex = x.elements(cap);
  const auto ey = y.elements(cap);
  std::vector<Tuple> meet;
  std::set_intersection(ex.begin(), ex.end(), ey.begin(), ey.end(), std::back_inserter(meet));
  auto v = verdict_from_orders(x.ambient(), ex.size(), ey.size(), meet.size());
  if (!v.holds && witness_budget > 0) {
    const DirectPower& amb = x.ambient();
    const bool x_smaller = ex.size() <= ey.size();
    v.witness = find_uncovered(amb, witness_budget, [&](const Tuple& m) {
      if (x_smaller) {
        for (const auto& a : ex)
          if (y.contains(amb.mul(amb.inv(a), m))) return true;
      } else {
        for (const auto& b : ey)
          if (x.contains(amb.mul(m, amb.inv(b)))) return true;
      }
      return false;
    });
  }
  return v;
}

OrthstripReport orthstrip_check(const GroupPtr& t, std::uint64_t budget) {
  const auto autos = enumerate_automorphisms(t);
  OrthstripReport r;
  r.group = t->name();
  r.automorphisms = autos.size();
  if (static_cast<std::uint64_t>(autos.size()) * autos.size() > budget)
    throw Error(ErrorKind::budget_exceeded, "|Aut(" + t->name() + ")|^2 pairs exceed the budget of " +
                                                std::to_string(budget));
  DirectPower m(t, 2);
  for (std::size_t i = 0; i < autos.size(); ++i) {
    const LinkedSubgroup x = StripProduct(m, {FullStrip(t, {0, 1}, {Automorphism::identity(t), autos[i]})}).to_linked();
    for (std::size_t j = 0; j < autos.size(); ++j) {
      const LinkedSubgroup y =
          StripProduct(m, {FullStrip(t, {0, 1}, {Automorphism::identity(t), autos[j]})}).to_linked();
      const bool holds = product_covers(x, y, 0).holds;
      const bool predicted = is_uniform(autos[i].then(autos[j].inverse())).uniform;
      ++r.pairs;
      if (holds) {
        ++r.factorising;
        r.factorising_pairs.emplace_back(i, j);
      }
      if (predicted) ++r.predicted;
      if (holds == predicted)
        ++r.agreements;
      else
        r.counterexamples.emplace_back(i, j);
    }
  }
  return r;
}

StripProduct double_strip_x(const GroupPtr& t, const std::vector<Automorphism>& alphas) {
  const unsigned d = static_cast<unsigned>(alphas.size());
  std::vector<FullStrip> strips;
  for (unsigned i = 0; i < d; ++i) strips.emplace_back(t, std::vector<unsigned>{2 * i, 2 * i + 1},
                                                       std::vector<Automorphism>{Automorphism::identity(t), alphas[i]});
  return StripProduct(DirectPower(t, 2 * d), std::move(strips));
}

StripProduct double_strip_y(const GroupPtr& t, const std::vector<Automorphism>& betas) {
  const unsigned d = static_cast<unsigned>(betas.size());
  std::vector<FullStrip> strips;
  // Coordinate 1 carries beta_d(s_d) and coordinate 2d carries s_d.
  strips.emplace_back(t, std::vector<unsigned>{0, 2 * d - 1},
                      std::vector<Automorphism>{Automorphism::identity(t), betas[d - 1].inverse()});
  for (unsigned i = 1; i < d; ++i) strips.emplace_back(t, std::vector<unsigned>{2 * i - 1, 2 * i},
                                                       std::vector<Automorphism>{Automorphism::identity(t), betas[i - 1]});
  return StripProduct(DirectPower(t, 2 * d), std::move(strips));
}

std::variant<DoubleStripSolution, FactorisationVerdict> doublestrips_solve(const std::vector<Automorphism>& alphas,
                                                                           const std::vector<Automorphism>& betas,
                                                                           const Tuple& x) {
  const std::size_t d = alphas.size();
  if (d == 0 || betas.size() != d) throw Error(ErrorKind::invalid_input, "need d >= 1 alphas and as many betas");
  if (x.size() != 2 * d) throw Error(ErrorKind::invalid_input, "target must have 2d coordinates");
  const GroupPtr& tg = alphas[0].group();
  const FiniteGroup& g = *tg;
  for (Elem v : x)
    if (v >= g.order()) throw Error(ErrorKind::invalid_input, "target coordinate out of range");

  // A[i] = alpha_i beta_i ... alpha_d beta_d, B[i] = beta_i alpha_{i+1} ... beta_d (0-based i).
  std::vector<Automorphism> a_tail, b_tail;
  {
    Automorphism acc = Automorphism::identity(tg);
    std::vector<Automorphism> as(d, acc), bs(d, acc);
    for (std::size_t i = d; i-- > 0;) {
      bs[i] = betas[i].then(acc);
      as[i] = alphas[i].then(bs[i]);
      acc = as[i];
    }
    a_tail = std::move(as);
    b_tail = std::move(bs);
  }
  const Automorphism& composite = a_tail[0];
  const auto report = is_uniform(composite);
  if (!report.uniform) {
    const auto xs = double_strip_x(tg, alphas), ys = double_strip_y(tg, betas);
    auto v = product_covers(xs, ys, 0);
    Tuple w(2 * d, 0);
    w[0] = *report.uncovered;
    v.witness = w;
    return v;
  }

  auto xi = [&](std::size_t j) { return x[j - 1]; };  // 1-based
  Elem rhs = 0;
  for (std::size_t i = d; i >= 1; --i) {
    const Elem left = b_tail[i - 1](g.inv(xi(2 * i)));
    const Elem right = a_tail[i - 1](xi(2 * i - 1));
    rhs = g.mul(rhs, g.mul(left, right));
  }
  const Elem s0 = uniform_preimage(composite, rhs);
  std::vector<Elem> s(d + 1), t(d + 1);  // 1-based
  s[d] = betas[d - 1].inverse()(s0);
  t[d] = alphas[d - 1].inverse()(g.mul(s[d], g.inv(xi(2 * d))));
  for (std::size_t i = d - 1; i >= 1; --i) {
    s[i] = betas[i - 1].inverse()(g.mul(t[i + 1], xi(2 * i + 1)));
    t[i] = alphas[i - 1].inverse()(g.mul(s[i], g.inv(xi(2 * i))));
  }

  DoubleStripSolution sol;
  sol.t.assign(2 * d, 0);
  sol.s.assign(2 * d, 0);
  for (std::size_t i = 1; i <= d; ++i) {
    sol.t[2 * i - 2] = g.inv(t[i]);
    sol.t[2 * i - 1] = alphas[i - 1](g.inv(t[i]));
  }
  sol.s[0] = betas[d - 1](s[d]);
  for (std::size_t i = 1; i <= d; ++i) {
    sol.s[2 * i - 1] = s[i];
    if (i < d) sol.s[2 * i] = betas[i - 1](s[i]);
  }
  DirectPower m(tg, static_cast<unsigned>(2 * d));
  if (m.mul(sol.t, sol.s) != x || !double_strip_x(tg, alphas).contains(sol.t) ||
      !double_strip_y(tg, betas).contains(sol.s))
    throw Error(ErrorKind::precondition, "double strip solution failed its check");
  return sol;
}

const StripGraph::Edge* StripGraph::edge(std::size_t u, std::size_t v) const {
  if (is_x(v)) std::swap(u, v);
  for (const auto& e : edges)
    if (e.x == u && e.y == v) return &e;
  return nullptr;
}

StripGraph build_strip_graph(const StripProduct& x, const StripProduct& y) {
  if (!x.full().empty() || !y.full().empty())
    throw Error(ErrorKind::invalid_input, "strip graphs need products of non-trivial strips only");
  StripGraph g;
  g.x_count = x.strips().size();
  g.y_count = y.strips().size();
  g.adjacency.assign(g.vertex_count(), {});
  for (std::size_t i = 0; i < g.x_count; ++i)
    for (std::size_t j = 0; j < g.y_count; ++j) {
      std::vector<unsigned> shared;
      const auto& a = x.strips()[i].support();
      const auto& b = y.strips()[j].support();
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
      if (shared.empty()) continue;
      g.edges.push_back({i, g.x_count + j, std::move(shared)});
      g.adjacency[i].push_back(g.x_count + j);
      g.adjacency[g.x_count + j].push_back(i);
    }
  return g;
}

std::optional<NoUniformCertificate> NoUniformCertificate::issue(const GroupPtr& t) {
  const auto autos = enumerate_automorphisms(t);
  for (const auto& a : autos)
    if (is_uniform(a).uniform) return std::nullopt;
  return NoUniformCertificate(t, autos.size());
}

const char* claim_name(Claim c) {
  switch (c) {
    case Claim::isolated_vertex: return "isolated_vertex";
    case Claim::fat_edge: return "fat_edge";
    case Claim::cycle: return "cycle";
    case Claim::few_leaves: return "few_leaves";
    case Claim::one_sided_leaves: return "one_sided_leaves";
    case Claim::uncovered_counts: return "uncovered_counts";
    case Claim::path: return "path";
  }
  return "?";
}

namespace {

const FullStrip& strip_of(const StripProduct& x, const StripProduct& y, const StripGraph& g, std::size_t v) {
  return g.is_x(v) ? x.strips()[v] : y.strips()[v - g.x_count];
}

unsigned shared_coord(const StripGraph& g, std::size_t u, std::size_t v) { return g.edge(u, v)->shared[0]; }

// Shortest cycle as a vertex sequence starting at an X vertex, or empty.
std::vector<std::size_t> shortest_cycle(const StripGraph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::size_t> best;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  for (std::size_t root = 0; root < nv; ++root) {
    std::vector<std::size_t> dist(nv, none), parent(nv, none);
    dist[root] = 0;
    std::vector<std::size_t> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t u = queue[qi];
      for (std::size_t v : g.adjacency[u]) {
        if (dist[v] == none) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (parent[u] != v && u < v) {
          const std::size_t len = dist[u] + dist[v] + 1;
          if (!best.empty() && len >= best.size()) continue;
          std::vector<std::size_t> pu, pv;
          for (std::size_t a = u; a != none; a = parent[a]) pu.push_back(a);
          for (std::size_t a = v; a != none; a = parent[a]) pv.push_back(a);
          // Both paths end at root; the cycle is simple only if they meet there first.
          std::set<std::size_t> seen(pu.begin(), pu.end() - 1);
          bool simple = true;
          for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            if (seen.count(pv[i])) simple = false;
          if (!simple) continue;
          std::vector<std::size_t> cyc(pu.rbegin(), pu.rend());  // root .. u
          cyc.insert(cyc.end(), pv.begin(), pv.end() - 1);       // v .. child of root
          best = std::move(cyc);
        }
      }
    }
  }
  if (best.empty()) return best;
  auto start = std::find_if(best.begin(), best.end(), [&](std::size_t v) { return g.is_x(v); });
  std::rotate(best.begin(), start, best.end());
  return best;
}

std::vector<unsigned> outside(unsigned k, const StripProduct& p) {
  std::vector<bool> cov(k, false);
  for (const auto& s : p.strips())
    for (unsigned c : s.support()) cov[c] = true;
  std::vector<unsigned> out;
  for (unsigned c = 0; c < k; ++c)
    if (!cov[c]) out.push_back(c);
  return out;
}

StripProduct augmented(const StripProduct& p, const std::vector<unsigned>& extra) {
  std::vector<FullStrip> strips = p.strips();
  strips.push_back(FullStrip::diagonal(p.ambient().base, extra));
  return StripProduct(p.ambient(), std::move(strips));
}

Diagnosis diagnose(const StripProduct& x, const StripProduct& y, int depth) {
  const DirectPower& m = x.ambient();
  const unsigned k = m.k;
  const GroupPtr& tg = m.base;
  const StripGraph g = build_strip_graph(x, y);
  Diagnosis d;
  d.witness = m.identity();
  const Elem nonid = 1;

  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.valency(v) == 0) {
      const FullStrip& s = strip_of(x, y, g, v);
      d.claim = Claim::isolated_vertex;
      d.vertices = {v};
      d.detail = std::string(g.is_x(v) ? "X" : "Y") + " strip on {" + coords_text(s.support()) +
                 "} meets no strip of the other side";
      d.witness[s.support()[0]] = nonid;
      return d;
    }

  for (const auto& e : g.edges)
    if (e.fat()) {
      const FullStrip& sx = x.strips()[e.x];
      const FullStrip& sy = y.strips()[e.y - g.x_count];
      const unsigned i1 = e.shared[0], i2 = e.shared[1];
      Automorphism c = sx.relation(i1, i2).then(sy.relation(i1, i2).inverse());
      const auto r = is_uniform(c);
      if (r.uniform) throw Error(ErrorKind::precondition, "uniform automorphism met while diagnosing");
      d.claim = Claim::fat_edge;
      d.vertices = {e.x, e.y};
      d.labels = {i1, i2};
      d.detail = "strips share coordinates {" + coords_text(e.shared) + "}";
      d.witness[i1] = *r.uncovered;
      d.composite = std::move(c);
      return d;
    }

  if (auto cyc = shortest_cycle(g); !cyc.empty()) {
    const std::size_t len = cyc.size();
    const std::size_t dd = len / 2;
    // cyc = X_1, Y_1, ..., X_d, Y_d; T_{2i-1} = Y_{i-1} cap X_i, T_{2i} = X_i cap Y_i.
    std::vector<unsigned> labels(len);
    for (std::size_t i = 0; i < dd; ++i) {
      labels[2 * i] = shared_coord(g, cyc[(2 * i + len - 1) % len], cyc[2 * i]);
      labels[2 * i + 1] = shared_coord(g, cyc[2 * i], cyc[2 * i + 1]);
    }
    Automorphism c = Automorphism::identity(tg);
    for (std::size_t i = 0; i < dd; ++i) {
      const FullStrip& xi = strip_of(x, y, g, cyc[2 * i]);
      const FullStrip& yi = strip_of(x, y, g, cyc[2 * i + 1]);
      c = c.then(xi.relation(labels[2 * i], labels[2 * i + 1]));
      c = c.then(yi.relation(labels[2 * i + 1], labels[(2 * i + 2) % len]));
    }
    const auto r = is_uniform(c);
    if (r.uniform) throw Error(ErrorKind::precondition, "uniform automorphism met while diagnosing");
    d.claim = Claim::cycle;
    d.vertices = cyc;
    d.labels = labels;
    d.detail = "cycle of length " + std::to_string(len) + " through coordinates " + coords_text(labels);
    d.witness[labels[0]] = *r.uncovered;
    d.composite = std::move(c);
    return d;
  }

  std::vector<std::size_t> x_leaves, y_leaves;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.valency(v) == 1) (g.is_x(v) ? x_leaves : y_leaves).push_back(v);

  auto recurse = [&](Claim claim, const StripProduct& xa, const StripProduct& ya, std::string detail) {
    if (depth > 4) throw Error(ErrorKind::precondition, "diagnosis recursion did not terminate");
    d.claim = claim;
    d.detail = std::move(detail);
    auto sub = std::make_shared<Diagnosis>(diagnose(xa, ya, depth + 1));
    // XY lies inside the augmented product, so its witness is ours too.
    d.witness = sub->witness;
    d.augmented = std::move(sub);
    return d;
  };

  if (x_leaves.size() + y_leaves.size() < 2) {
    // A forest without isolated vertices always has two leaves.
    throw Error(ErrorKind::precondition, "acyclic strip graph with fewer than two leaves");
  }

  const auto out1 = outside(k, x), out2 = outside(k, y);
  if (y_leaves.empty() || x_leaves.empty()) {
    const bool leaves_in_x = y_leaves.empty();
    const auto& extra = leaves_in_x ? out2 : out1;
    if (extra.size() < 2) throw Error(ErrorKind::precondition, "one-sided leaves with fewer than two free coordinates");
    d.vertices = leaves_in_x ? x_leaves : y_leaves;
    if (leaves_in_x)
      return recurse(Claim::one_sided_leaves, x, augmented(y, extra),
                     "every leaf is an X strip; Y extended by a strip on {" + coords_text(extra) + "}");
    return recurse(Claim::one_sided_leaves, augmented(x, extra), y,
                   "every leaf is a Y strip; X extended by a strip on {" + coords_text(extra) + "}");
  }

  const std::size_t a1 = out1.size(), a2 = out2.size();
  if (a1 != 1 || a2 != 1) {
    const std::string counts = "a1=" + std::to_string(a1) + ", a2=" + std::to_string(a2);
    if (a1 >= 2 && a2 >= 2)
      return recurse(Claim::uncovered_counts, augmented(x, out1), augmented(y, out2), counts + "; both sides extended");
    if (a1 == 1 && a2 >= 2)
      return recurse(Claim::uncovered_counts, x, augmented(y, out2), counts + "; Y extended");
    if (a2 == 1 && a1 >= 2)
      return recurse(Claim::uncovered_counts, augmented(x, out1), y, counts + "; X extended");
    throw Error(ErrorKind::precondition, "leaves on both sides but " + counts);
  }

  // Path X_1 - Y_1 - ... - X_r - Y_r: the X leaf's coordinate outside Y.
  const std::size_t leaf = x_leaves[0];
  d.claim = Claim::path;
  d.vertices = {leaf, y_leaves[0]};
  d.labels = {out2[0]};
  d.detail = "path with the X leaf free at coordinate " + std::to_string(out2[0] + 1);
  d.witness[out2[0]] = nonid;
  return d;
}

}  // namespace

Diagnosis diagnose_nonfactorisation(const StripProduct& x, const StripProduct& y, const NoUniformCertificate& cert,
                                    bool verify_witness) {
  if (!(x.ambient() == y.ambient())) throw Error(ErrorKind::invalid_input, "products live in different direct powers");
  if (x.ambient().base != cert.group())
    throw Error(ErrorKind::precondition, "certificate is for a different group");
  if (x.strips().empty() && y.strips().empty()) throw Error(ErrorKind::invalid_input, "both products are trivial");
  if (x.ambient().base->order() < 2) throw Error(ErrorKind::precondition, "trivial base group");
  Diagnosis d = diagnose(x, y, 0);
  if (verify_witness && in_product(x.to_linked(), y.to_linked(), d.witness))
    throw Error(ErrorKind::precondition, std::string("witness for ") + claim_name(d.claim) + " lies in XY");
  return d;
}

std::pair<StripProduct, StripProduct> g6_factors(const GroupPtr& g, const Automorphism& a2, const Automorphism& a3) {
  DirectPower m(g, 6);
  const auto id = Automorphism::identity(g);
  StripProduct x(m, {FullStrip::diagonal(g, {0, 1, 2}), FullStrip::diagonal(g, {3, 4, 5})});
  StripProduct y(m, {FullStrip::diagonal(g, {0, 3}), FullStrip(g, {1, 4}, {id, a2}), FullStrip(g, {2, 5}, {id, a3})});
  return {x, y};
}

G6Report g6_joint_uniform_search(const GroupPtr& g, std::uint64_t budget) {
  const std::size_t n = g->order();
  if (n < 2) throw Error(ErrorKind::precondition, "the construction needs a non-trivial group");
  G6Report r;
  r.group = g->name();
  r.order = n;
  r.square_order = BigInt(n) * n;
  const auto autos = enumerate_automorphisms(g);
  r.automorphisms = autos.size();
  if (static_cast<std::uint64_t>(autos.size()) * autos.size() <= budget) {
    r.searched = true;
    std::vector<std::vector<Elem>> image(autos.size(), std::vector<Elem>(n));
    for (std::size_t a = 0; a < autos.size(); ++a)
      for (Elem t = 0; t < n; ++t) image[a][t] = g->mul(g->inv(t), autos[a](t));
    std::vector<std::uint32_t> stamp(n * n, 0);
    std::uint32_t round = 0;
    for (std::size_t i = 0; i < autos.size(); ++i)
      for (std::size_t j = 0; j < autos.size(); ++j) {
        ++round;
        std::size_t size = 0;
        for (Elem t = 0; t < n; ++t) {
          auto& s = stamp[static_cast<std::size_t>(image[i][t]) * n + image[j][t]];
          if (s != round) {
            s = round;
            ++size;
          }
        }
        ++r.pairs;
        if (size > r.max_joint_image) {
          r.max_joint_image = size;
          r.best_alpha2 = i;
          r.best_alpha3 = j;
        }
      }
  }
  const auto [x, y] = g6_factors(g, autos[r.best_alpha2], autos[r.best_alpha3]);
  const auto v = product_covers(x, y, 0);
  r.x_order = v.x_order;
  r.y_order = v.y_order;
  r.intersection_order = v.intersection_order;
  r.product_order = v.product_order;
  r.ambient_order = v.ambient_order;
  r.deficiency = v.ambient_order - v.product_order;
  return r;
}

}  // namespace unifact
