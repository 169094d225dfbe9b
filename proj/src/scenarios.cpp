#include "latkit/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "latkit/errors.hpp"
#include "latkit/fixtures.hpp"
#include "latkit/gluing.hpp"
#include "latkit/symplectic_f2.hpp"
#include "latkit/version.hpp"

namespace latkit {

bool ScenarioReport::pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

Json ScenarioReport::to_json(bool with_timing) const {
  Json out;
  out["scenario"] = scenario;
  Json cs = Json::array();
  for (const auto& c : claims) {
    Json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["computed"] = c.computed;
    j["expected"] = c.expected;
    j["provenance"] = c.provenance;
    j["pass"] = c.pass;
    cs.push_back(std::move(j));
  }
  out["claims"] = std::move(cs);
  out["pass"] = pass();
  out["resource_limited"] = resource_limited;
  if (!notes.empty()) out["notes"] = notes;
  if (with_timing) out["elapsed_ms"] = elapsed_ms;
  out["version"] = version;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  explicit Runner(std::string name) : start_(Clock::now()) {
    report_.scenario = std::move(name);
    report_.version = kVersion;
  }

  void claim(std::string id, std::string anchor, std::string provenance, Json expected,
             const std::function<Json()>& compute) {
    Claim c{std::move(id), std::move(anchor), nullptr, std::move(expected), std::move(provenance), false};
    try {
      c.computed = compute();
      c.pass = c.computed == c.expected;
    } catch (const ResourceLimit& e) {
      c.computed = Json{{"error", std::string("resource limit: ") + e.what()}};
      report_.resource_limited = true;
    } catch (const std::exception& e) {
      c.computed = Json{{"error", e.what()}};
    }
    report_.claims.push_back(std::move(c));
  }

  void note(std::string text) { report_.notes.push_back(std::move(text)); }

  ScenarioReport finish() {
    report_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  Clock::time_point start_;
  ScenarioReport report_;
};

template <class T>
const T& need(const std::optional<T>& x, const char* what) {
  if (!x) throw Error(std::string("prerequisite unavailable: ") + what);
  return *x;
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json sorted_elements(const IntMatrix& gram, const IsometryGroup& g, std::uint64_t limit) {
  const ElementTable table(gram, g.generators(), limit);
  Json out = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) out.push_back(to_json(table.element(i)));
  std::sort(out.begin(), out.end());
  return out;
}

IntVector row_vector(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values) v.emplace_back(x);
  return v;
}

IntMatrix one_row(const IntVector& v) {
  IntMatrix m(0, v.size());
  m.append_row(v);
  return m;
}

RatVector scaled(const IntVector& v, const Rational& s) {
  RatVector out;
  for (const auto& x : v) out.push_back(Rational(x) * s);
  return out;
}

FqmMap negated(const FiniteQuadraticModule& f, const FqmMap& m) {
  FqmMap out = m;
  for (auto& img : out.images) img = f.negate(img);
  return out;
}

// Unimodular T with T G T^T = k U for a rank-2 lattice of that shape, found
// among frames with coordinates in [-3, 3].
std::optional<IntMatrix> hyperbolic_frame(const Lattice& l) {
  if (l.rank() != 2) return std::nullopt;
  std::vector<IntVector> isotropic;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      const IntVector v = row_vector({a, b});
      if ((a || b) && l.norm(v) == 0) isotropic.push_back(v);
    }
  for (const auto& u : isotropic)
    for (const auto& w : isotropic) {
      IntMatrix t(0, 2);
      t.append_row(u);
      t.append_row(w);
      if (abs(det_exact(t)) != 1) continue;
      if (l.inner(u, w) * l.inner(u, w) == -l.det()) return t;
    }
  return std::nullopt;
}

std::vector<IntMatrix> hyperbolic_type_automorphisms(const Lattice& l) {
  const auto t = hyperbolic_frame(l);
  if (!t) throw Error("lattice is not a scaled hyperbolic plane");
  const IntMatrix ti = unimodular_inverse(*t);
  const auto u = hyperbolic_automorphisms();
  const ElementTable table(u.gram(), u.generators(), 16);
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    IntMatrix g = ti * table.element(i) * *t;
    if (!preserves_gram(g, l.gram())) throw Error("conjugated hyperbolic isometry failed");
    out.push_back(std::move(g));
  }
  return out;
}

ScenarioReport genus3(const ScenarioOptions& opts) {
  Runner r("genus3");
  const Lattice l = make_standard("I_{1,7}");
  const Lattice m = twist(l, 2);
  const IntVector eta0 = row_vector({3, -1, -1, -1, -1, -1, -1, -1});

  r.claim("parity", "I_{1,7} odd, M = I_{1,7}(2) even", "trivial", Json{{"ambient_even", false}, {"m_even", true}},
          [&] { return Json{{"ambient_even", is_even(l)}, {"m_even", is_even(m)}}; });

  std::optional<FiniteQuadraticModule> am;
  r.claim("disc-m", "A_M = (Z/2)^8", "literature",
          Json{{"invariant_factors", Json::array({2, 2, 2, 2, 2, 2, 2, 2})}, {"two_elementary_rank", 8}, {"q_modulus", 2}},
          [&] {
            am = FiniteQuadraticModule::discriminant(m);
            const auto [elementary, rk] = is_p_elementary(*am, 2);
            return Json{{"invariant_factors", integers(am->orders())},
                        {"two_elementary_rank", elementary ? rk : 0},
                        {"q_modulus", am->q_modulus()}};
          });

  r.claim("eta0-norm", "eta_0 = -K_D, eta_0^2 = 2", "trivial", 2, [&] { return to_json(l.norm(eta0)); });

  std::optional<Sublattice> p;
  r.claim("eta0-perp-e7", "eta_0-perp = E_7(-1)", "literature", Json{{"isometric", true}, {"verified", true}}, [&] {
    p = orthogonal_complement(l, one_row(eta0));
    const Lattice pl = p->induced("P");
    const Lattice e7m = twist(make_standard("E7"), -1);
    const auto t = isometry_test(pl, e7m);
    const bool verified = t && (*t) * e7m.gram() * t->transpose() == pl.gram();
    return Json{{"isometric", t.has_value()}, {"verified", verified}};
  });

  r.claim("index-eta0-plus-p", "[H^2(D) : (eta_0) + P] = 2", "literature", Json{{"index", 2}, {"p_primitive", true}},
          [&] {
            const auto& pb = need(p, "P").basis;
            IntMatrix w = one_row(eta0);
            for (std::size_t i = 0; i < pb.rows(); ++i) w.append_row(pb.row(i));
            const auto idx = sublattice_index_and_primitivity(l, Sublattice{l, w});
            const bool prim = sublattice_index_and_primitivity(l, *p).primitive;
            return Json{{"index", idx.index ? to_json(*idx.index) : Json(nullptr)}, {"p_primitive", prim}};
          });

  const Lattice e7 = make_standard("E7");
  const auto half = FiniteQuadraticModule::half_quotient(e7);
  std::optional<IsometryGroup> aut;
  r.claim("aut-e7-order", "|Aut(E_7)|", "derived", 2903040, [&] {
    aut = automorphism_group(e7);
    return to_json(aut->order());
  });

  std::optional<Integer> image_order;
  r.claim("e7-image-order", "|image of Aut(P) in Aut((1/2 P)/P, q)|", "derived", 1451520, [&] {
    std::vector<FqmMap> gens;
    for (const auto& g : need(aut, "Aut(E7)").generators()) gens.push_back(induced_map(half, g));
    image_order = closure_order(half, gens, opts.group_limit);
    return to_json(*image_order);
  });

  r.claim("e7-target-order", "|Aut((1/2 P)/P, q)|", "derived", 1451520,
          [&] { return to_json(fqm_automorphism_group(half, opts.fqm_limit).order); });

  r.claim("e7-sequence", "1 -> {+-id} -> Aut(P) -> Aut((1/2 P)/P, q) -> 1", "literature",
          Json{{"minus_id_in_kernel", true}, {"kernel_order", 2}, {"surjective", true}}, [&] {
            const IntMatrix minus = -IntMatrix::identity(7);
            const bool in_kernel = preserves_gram(minus, e7.gram()) && induced_map(half, minus) == identity_map(half);
            const Integer& total = need(aut, "Aut(E7)").order();
            const Integer& img = need(image_order, "image order");
            const Integer target = fqm_automorphism_group(half, opts.fqm_limit).order;
            const Integer kernel = total / img;
            return Json{{"minus_id_in_kernel", in_kernel},
                        {"kernel_order", to_json(kernel * img == total ? kernel : Integer(0))},
                        {"surjective", img == target}};
          });

  std::optional<FqmSubgroup> s;
  r.claim("integral-subgroup", "{a in A_M : q_M(a) in Z/2Z} = (1/2 P)/P", "literature",
          Json{{"order", 128}, {"index", 2}, {"equals_half_p_image", true}}, [&] {
            const auto& a = need(am, "A_M");
            s = integral_value_subgroup(a, opts.fqm_limit);
            std::vector<FqmElement> gens;
            const auto& pb = need(p, "P").basis;
            for (std::size_t i = 0; i < pb.rows(); ++i) gens.push_back(a.coordinates_of(scaled(pb.row(i), Rational(1, 2))));
            const auto image = generated_subgroup(a, gens, opts.fqm_limit);
            return Json{{"order", to_json(s->order())},
                        {"index", to_json(a.order() / s->order())},
                        {"equals_half_p_image", image.elements == s->elements}};
          });

  r.claim("extensions-fixing-subgroup", "isometries of A_M trivial on (1/2 P)/P", "literature", 2, [&] {
    return Json(extension_count_fixing_subgroup(need(am, "A_M"), need(s, "integral subgroup"), opts.fqm_limit));
  });

  r.claim("n-rank", "rank N = 22 - rank M", "derived", 14, [&] {
    const auto k3 = middle_rank_and_signature(2, 4, false);
    return to_json(k3.rank - Integer(static_cast<unsigned long>(m.rank())));
  });

  r.claim("n-hodge-type", "Hodge type of N from the rank split", "derived", Json::array({1, 12, 1}), [&] {
    const auto k3 = primitive_hodge_numbers(2, 4);
    const Integer n_rank = middle_rank_and_signature(2, 4, false).rank - Integer(static_cast<unsigned long>(m.rank()));
    return Json::array({to_json(k3.front()), to_json(n_rank - 2 * k3.front()), to_json(k3.back())});
  });

  r.note("N-side Hodge type: (1,14,1) would need rank 16; rank N = 22 - 8 = 14 gives (1,12,1).");
  r.note("mu_4 = {+-id, +-sigma} is taken to act on N; sigma is the identity on M.");
  return r.finish();
}

ScenarioReport genus4(const ScenarioOptions& opts) {
  Runner r("genus4");
  const Lattice u = make_standard("U");

  r.claim("aut-u", "Aut(U) = {+-id, +-swap}", "literature",
          Json{{"order", 4},
               {"elements", [] {
                  Json e = Json::array({Json::array({Json::array({1, 0}), Json::array({0, 1})}),
                                        Json::array({Json::array({-1, 0}), Json::array({0, -1})}),
                                        Json::array({Json::array({0, 1}), Json::array({1, 0})}),
                                        Json::array({Json::array({0, -1}), Json::array({-1, 0})})});
                  std::sort(e.begin(), e.end());
                  return e;
                }()},
               {"box_search_count", 4}},
          [&] {
            const auto g = hyperbolic_automorphisms();
            long count = 0;
            for (long a = -3; a <= 3; ++a)
              for (long b = -3; b <= 3; ++b)
                for (long c = -3; c <= 3; ++c)
                  for (long d = -3; d <= 3; ++d)
                    if (preserves_gram(IntMatrix{{a, b}, {c, d}}, u.gram())) ++count;
            return Json{{"order", to_json(g.order())},
                        {"elements", sorted_elements(u.gram(), g, 16)},
                        {"box_search_count", count}};
          });

  const Lattice u3 = twist(u, 3);
  std::optional<FiniteQuadraticModule> a;
  FqmElement x1, x2, eta;
  r.claim("disc-u3", "A_{U(3)} = (Z/3)^2", "literature",
          Json{{"invariant_factors", Json::array({3, 3})}, {"q_x1", "0"}, {"q_x2", "0"}, {"b_x1_x2", "1/3"}},
          [&] {
            a = FiniteQuadraticModule::discriminant(u3);
            x1 = a->coordinates_of(RatVector{Rational(1, 3), Rational(0)});
            x2 = a->coordinates_of(RatVector{Rational(0), Rational(1, 3)});
            eta = a->coordinates_of(RatVector{Rational(1, 3), Rational(1, 3)});
            return Json{{"invariant_factors", integers(a->orders())},
                        {"q_x1", fraction_string(a->q(x1))},
                        {"q_x2", fraction_string(a->q(x2))},
                        {"b_x1_x2", fraction_string(a->b(x1, x2))}};
          });

  r.claim("q-u3-values", "q on A_{U(3)}", "derived", Json{{"0", 5}, {"2/3", 2}, {"4/3", 2}}, [&] {
    std::map<std::string, int> hist;
    for (const auto& x : need(a, "A_{U(3)}").elements(opts.fqm_limit)) ++hist[fraction_string(a->q(x))];
    Json out = Json::object();
    for (const auto& [k, v] : hist) out[k] = v;
    return out;
  });

  std::optional<std::vector<FqmMap>> isos;
  r.claim("aut-a-u3", "|Aut(A_{U(3)}, q)|", "derived", 4, [&] {
    isos = fqm_automorphisms_fixing(need(a, "A_{U(3)}"), {}, opts.fqm_limit);
    return Json(isos->size());
  });

  r.claim("sign-selection", "exactly one of +-zeta fixes [(x_1 + x_2)/3]", "literature",
          Json{{"isometries", 4}, {"exactly_one", 4}, {"fixers_send_x1_to_x1_or_x2", true}}, [&] {
            const auto& f = need(a, "A_{U(3)}");
            int exactly_one = 0;
            bool targets_ok = true;
            for (const auto& z : need(isos, "Aut(A_{U(3)})")) {
              const bool plus = z.apply(f, eta) == eta;
              const bool minus = negated(f, z).apply(f, eta) == eta;
              if (plus != minus) ++exactly_one;
              if (plus) {
                const auto img = z.apply(f, x1);
                targets_ok = targets_ok && (img == x1 || img == x2);
              }
            }
            return Json{{"isometries", isos->size()}, {"exactly_one", exactly_one}, {"fixers_send_x1_to_x1_or_x2", targets_ok}};
          });

  // U(3) = <x1 + x2', y1 + 2 y2'> inside U + U, complement of type U(-3)
  const Lattice uu = direct_sum(u, u);
  IntMatrix mb(0, 4);
  mb.append_row(row_vector({1, 0, 1, 0}));
  mb.append_row(row_vector({0, 1, 0, 2}));
  std::optional<GlueData> glue;
  r.claim("glue-u-plus-u", "U(3) and its complement in U + U", "derived",
          Json{{"m_gram", Json::array({Json::array({0, 3}), Json::array({3, 0})})},
               {"a_m_order", 9},
               {"a_n_order", 9},
               {"glue_order", 9},
               {"anti_isometry", true}},
          [&] {
            glue = glue_data(uu, Sublattice{uu, mb});
            const auto& an = glue->anti.an;
            const auto& amod = glue->anti.am;
            bool anti = true;
            for (const auto& x : amod.elements(opts.fqm_limit)) {
              const Rational sum = amod.q(x) + an.q(glue->anti.phi.apply(an, x));
              anti = anti && sum.get_den() == 1 && sum.get_num() % 2 == 0;
            }
            return Json{{"m_gram", to_json(glue->m_lattice.gram())},
                        {"a_m_order", to_json(amod.order())},
                        {"a_n_order", to_json(an.order())},
                        {"glue_order", to_json(glue->glue_order)},
                        {"anti_isometry", anti}};
          });

  r.claim("glue-round-trip", "compatible pairs extend to L and restrict back", "derived",
          Json{{"pairs", 16}, {"compatible", 4}, {"round_trip", true}, {"mismatch_raised", true}}, [&] {
            const auto& g = need(glue, "glue data");
            const auto sm = hyperbolic_type_automorphisms(g.m_lattice);
            const auto sn = hyperbolic_type_automorphisms(g.n_lattice);
            int pairs = 0, compatible = 0;
            bool round_trip = true, mismatch = true;
            for (const auto& x : sm)
              for (const auto& y : sn) {
                ++pairs;
                if (glue_compatible(g, x, y)) {
                  ++compatible;
                  const IntMatrix e = extend_isometry(g, x, y);
                  round_trip = round_trip && preserves_gram(e, uu.gram()) && restrict_to(g.m(), e) == x &&
                               restrict_to(g.n(), e) == y;
                } else {
                  try {
                    extend_isometry(g, x, y);
                    mismatch = false;
                  } catch (const GlueMismatch&) {
                  }
                }
              }
            return Json{{"pairs", pairs}, {"compatible", compatible}, {"round_trip", round_trip}, {"mismatch_raised", mismatch}};
          });

  r.claim("eta-preserving-lift", "exactly one of +-zeta extends fixing eta_0 = x_1 + x_2", "literature",
          Json{{"checked", 4}, {"exactly_one", 4}}, [&] {
            const auto& g = need(glue, "glue data");
            const auto sm = hyperbolic_type_automorphisms(g.m_lattice);
            const auto sn = hyperbolic_type_automorphisms(g.n_lattice);
            const IntVector eta_m = row_vector({1, 1});
            const auto extends_fixing = [&](const IntMatrix& y) {
              for (const auto& x : sm)
                if (mul(eta_m, x) == eta_m && glue_compatible(g, x, y)) return true;
              return false;
            };
            int exactly_one = 0;
            for (const auto& y : sn)
              if (extends_fixing(y) != extends_fixing(-y)) ++exactly_one;
            return Json{{"checked", sn.size()}, {"exactly_one", exactly_one}};
          });

  r.claim("overlattice-u3", "U(3) + U(-3) glued along the graph of id", "derived",
          Json{{"rank", 4}, {"det", 1}, {"even", true}}, [&] {
            const Lattice n3 = twist(u, -3);
            const auto am3 = FiniteQuadraticModule::discriminant(u3);
            std::vector<std::pair<FqmElement, FqmElement>> gl;
            for (std::size_t i = 0; i < am3.num_generators(); ++i) gl.emplace_back(am3.generator(i), am3.generator(i));
            const auto o = overlattice_from_glue(u3, n3, gl);
            return Json{{"rank", o.lattice.rank()}, {"det", to_json(o.lattice.det())}, {"even", is_even(o.lattice)}};
          });
  return r.finish();
}

ScenarioReport cubic_surface_weyl(const ScenarioOptions& opts) {
  Runner r("cubic-surface-weyl");
  const Lattice l = make_standard("I_{1,6}");
  const IntVector v = row_vector({3, -1, -1, -1, -1, -1, -1});
  const Lattice e6m = twist(make_standard("E6"), -1);

  r.claim("eta-norm", "(3,-1,...,-1)^2 = 3", "trivial", 3, [&] { return to_json(l.norm(v)); });

  r.claim("perp-e6", "(3,-1,...,-1)-perp = E_6(-1)", "literature", true, [&] {
    const Lattice perp = orthogonal_complement(l, one_row(v)).induced("perp");
    return Json(isometry_test(perp, e6m).has_value());
  });

  std::optional<Integer> aut_order;
  r.claim("aut-e6-order", "|Aut(E_6(-1))|", "derived", 103680, [&] {
    aut_order = automorphism_group(e6m).order();
    return to_json(*aut_order);
  });

  std::optional<Integer> stab;
  r.claim("stabilizer-order", "|Stab_{Aut(I_{1,6})}(3,-1,...,-1)| = |W(E_6)|", "derived", 51840, [&] {
    stab = stabilizer_of_vector_in_unimodular(l, v, {}, opts.group_limit);
    return to_json(*stab);
  });

  r.claim("stabilizer-index", "[Aut(E_6(-1)) : glue-compatible subgroup]", "derived", 2,
          [&] { return to_json(need(aut_order, "Aut(E6)") / need(stab, "stabilizer")); });
  return r.finish();
}

ScenarioReport cubic_threefold_hodge(const ScenarioOptions&) {
  Runner r("cubic-threefold-hodge");
  r.claim("hodge", "primitive Hodge numbers of a cubic threefold", "literature", Json::array({0, 5, 5, 0}),
          [] { return integers(primitive_hodge_numbers(3, 3)); });
  r.claim("rank", "rank H^3 of a cubic threefold", "literature", 10,
          [] { return to_json(middle_rank_and_signature(3, 3, false).rank); });
  r.claim("h21-from-jacobian-degree-1", "dim (R/J)_1 for a = 2", "literature", 5,
          [] { return to_json(jacobian_hilbert_coefficient(3, 3, 1)); });
  r.claim("odd-signature-rejected", "no signature for odd n", "trivial", "rejected", [] {
    try {
      middle_rank_and_signature(3, 3, true);
    } catch (const InputError&) {
      return Json("rejected");
    }
    return Json("accepted");
  });
  return r.finish();
}

ScenarioReport cubic_fourfold_hodge(const ScenarioOptions&) {
  Runner r("cubic-fourfold-hodge");
  r.claim("hodge", "primitive Hodge numbers of a cubic fourfold", "literature", Json::array({0, 1, 20, 1, 0}),
          [] { return integers(primitive_hodge_numbers(4, 3)); });
  r.claim("rank-signature", "H^4 of a cubic fourfold", "literature",
          Json{{"rank", 23}, {"signature", Json::array({21, 2})}, {"primitive_signature", Json::array({20, 2})}}, [] {
            const auto m = middle_rank_and_signature(4, 3, true);
            return Json{{"rank", to_json(m.rank)},
                        {"signature", Json::array({to_json(m.signature->first), to_json(m.signature->second)})},
                        {"primitive_signature", Json::array({to_json(m.primitive_signature->first),
                                                             to_json(m.primitive_signature->second)})}};
          });
  r.claim("eta-perp", "eta-perp in I_{21,2} for a characteristic eta with eta^2 = 3", "literature",
          Json{{"rank", 22}, {"signature", Json::array({20, 2})}}, [] {
            const Lattice l = make_standard("I_{21,2}");
            IntVector eta(23, Integer(1));
            eta[21] = 3;
            eta[22] = 3;
            if (l.norm(eta) != 3) throw Error("eta^2 != 3");
            const Lattice perp = orthogonal_complement(l, one_row(eta)).induced("eta-perp");
            const auto [bp, bm] = signature(perp);
            return Json{{"rank", perp.rank()}, {"signature", Json::array({bp, bm})}};
          });
  r.claim("eta-perp-type", "eta-perp is even with |det| = 3", "derived", Json{{"even", true}, {"abs_det", 3}}, [] {
    const Lattice l = make_standard("I_{21,2}");
    IntVector eta(23, Integer(1));
    eta[21] = 3;
    eta[22] = 3;
    const Lattice perp = orthogonal_complement(l, one_row(eta)).induced("eta-perp");
    return Json{{"even", is_even(perp)}, {"abs_det", to_json(abs(perp.det()))}};
  });
  r.note("eta = (1,...,1,3,3) is characteristic in I_{21,2}, so eta-perp is even.");
  return r.finish();
}

ScenarioReport nikulin_glue_smoke(const ScenarioOptions&) {
  Runner r("nikulin-glue-smoke");
  constexpr int kCases = 20;
  const std::vector<std::string> ambients{"U+U", "I_{1,4}", "I_{2,3}", "I_{3,3}", "Z5"};

  r.claim("battery", "random primitive M in unimodular L, rank <= 6", "derived",
          Json{{"cases", kCases},
               {"anti_isometry", kCases},
               {"order_identity", kCases},
               {"sign_extensions", kCases},
               {"mixed_sign_rule", kCases}},
          [&] {
            SplitMix64 rng(0x6c61746b6974ULL);
            int cases = 0, anti = 0, orders = 0, signs = 0, mixed = 0;
            for (int c = 0; c < kCases; ++c) {
              const auto& name = ambients[static_cast<std::size_t>(c) % ambients.size()];
              const Lattice base =
                  name == "U+U" ? direct_sum(make_standard("U"), make_standard("U")) : make_standard(name);
              const Lattice l = change_basis(base, random_unimodular(base.rank(), rng));
              const auto rank = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(l.rank()) - 1));
              const auto m = random_primitive_sublattice(l, rank, rng);
              if (!m) throw Error("no primitive sublattice found");
              const GlueData g = glue_data(l, *m);
              ++cases;

              const auto& am = g.anti.am;
              const auto& an = g.anti.an;
              const int modulus = is_even(l) ? 2 : 1;
              // q and b on generators and pairs determine the forms everywhere
              bool ok = true;
              const auto& phi = g.anti.phi.images;
              for (std::size_t i = 0; i < am.num_generators(); ++i) {
                const auto gi = am.generator(i);
                const Rational qs = am.q(gi) + an.q(phi[i]);
                ok = ok && qs.get_den() == 1 && qs.get_num() % modulus == 0;
                for (std::size_t j = 0; j < am.num_generators(); ++j) {
                  const Rational bs = am.b(gi, am.generator(j)) + an.b(phi[i], phi[j]);
                  ok = ok && bs.get_den() == 1;
                }
              }
              if (ok) ++anti;
              if (g.glue_order * g.glue_order == am.order() * an.order() && am.order() == an.order()) ++orders;

              const std::size_t rm = g.m_lattice.rank();
              const std::size_t rn = g.n_lattice.rank();
              const IntMatrix im = IntMatrix::identity(rm);
              const IntMatrix in = IntMatrix::identity(rn);
              if (extend_isometry(g, im, in) == IntMatrix::identity(l.rank()) &&
                  extend_isometry(g, -im, -in) == -IntMatrix::identity(l.rank()))
                ++signs;

              // id + (-id) extends iff 2 A_M = 0
              const bool two_torsion =
                  std::all_of(am.orders().begin(), am.orders().end(), [](const Integer& d) { return d == 2; });
              bool extended = true;
              try {
                extend_isometry(g, im, -in);
              } catch (const GlueMismatch&) {
                extended = false;
              }
              if (extended == two_torsion) ++mixed;
            }
            return Json{{"cases", cases},
                        {"anti_isometry", anti},
                        {"order_identity", orders},
                        {"sign_extensions", signs},
                        {"mixed_sign_rule", mixed}};
          });

  r.claim("overlattice-2-minus-2", "<2> + <-2> glued along the diagonal", "trivial",
          Json{{"gram", Json::array({Json::array({0, 1}), Json::array({1, -2})})}, {"even", true}, {"det", -1}}, [] {
            const Lattice a(IntMatrix{{2}}, "<2>");
            const Lattice b(IntMatrix{{-2}}, "<-2>");
            const auto o = overlattice_from_glue(a, b, {{FqmElement{1}, FqmElement{1}}});
            return Json{{"gram", to_json(o.lattice.gram())}, {"even", is_even(o.lattice)}, {"det", to_json(o.lattice.det())}};
          });

  r.claim("overlattice-not-isotropic", "A_1 + A_1 diagonal glue is rejected", "trivial", "rejected", [] {
    const Lattice a1 = make_standard("A1");
    try {
      overlattice_from_glue(a1, a1, {{FqmElement{1}, FqmElement{1}}});
    } catch (const InputError&) {
      return Json("rejected");
    }
    return Json("accepted");
  });
  return r.finish();
}

ScenarioReport minus_id_residues(const ScenarioOptions&) {
  Runner r("minus-id-residues");
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> e(5, 0);
    e[static_cast<std::size_t>(i)] = 3;
    terms.push_back({e, Rational(1)});
  }
  terms.push_back({{1, 0, 0, 0, 2}, Rational(1)});
  const Polynomial f(5, terms);

  r.claim("smooth", "Z_0^3 + Z_1^3 + Z_2^3 + Z_3^3 + Z_0 Z_4^2 is smooth", "derived", true,
          [&] { return Json(is_smooth(f)); });

  std::optional<MinusIdReport> report;
  r.claim("sign-patterns", "nontrivial diagonal sign changes fixing F", "derived",
          Json::array({Json::array({0, 0, 0, 0, 1})}), [&] {
            report = minus_id_obstruction(f);
            Json out = Json::array();
            for (const auto& p : report->patterns) out.push_back(p.pattern);
            return out;
          });

  r.claim("eigenvalues", "eigenvalues on Res(Z_i Omega / F^2)", "derived",
          Json{{"dimension", 5}, {"minus_one", 4}, {"plus_one", 1}}, [&] {
            const auto& rep = need(report, "sign patterns");
            if (rep.patterns.size() != 1) throw Error("expected a single pattern");
            const auto& ev = rep.patterns.front().eigenvalues;
            const auto minus = std::count(ev.exponents.begin(), ev.exponents.end(), 1);
            const auto plus = std::count(ev.exponents.begin(), ev.exponents.end(), 0);
            return Json{{"dimension", ev.basis.size()}, {"minus_one", minus}, {"plus_one", plus}};
          });

  r.claim("obstruction", "-id on J(X) is not induced by a sign change", "literature", true,
          [&] { return Json(need(report, "sign patterns").obstruction_confirmed); });

  r.claim("fermat-vacuous", "odd-degree Fermat has no sign symmetry", "trivial", true,
          [] { return Json(minus_id_obstruction(Polynomial::fermat(5, 3)).vacuous); });

  r.claim("identity-action", "identity acts trivially on residues", "trivial", true, [&] {
    const auto ev = residue_eigenvalues(f, DiagonalAction{2, std::vector<int>(5, 0)}, 2);
    return Json(std::all_of(ev.exponents.begin(), ev.exponents.end(), [](int e) { return e == 0; }));
  });
  return r.finish();
}

ScenarioReport components_odd_odd(const ScenarioOptions&) {
  Runner r("components-odd-odd");
  const std::vector<Json> expected_sizes{Json::array({3, 1}), Json::array({10, 6}), Json::array({36, 28})};
  const std::vector<std::uint64_t> sp_orders{6, 720, 1451520};
  for (int g = 1; g <= 3; ++g) {
    const auto gi = static_cast<std::size_t>(g - 1);
    r.claim("orbits-g" + std::to_string(g), "Sp_" + std::to_string(2 * g) + "(F_2) orbits on refinements", "derived",
            Json{{"sizes", expected_sizes[gi]}, {"arf", Json::array({0, 1})}, {"total", 1U << (2 * g)}}, [g] {
              const auto orbits = refinement_orbits(g);
              std::vector<std::pair<std::size_t, int>> rows;
              for (const auto& o : orbits) rows.emplace_back(o.size(), arf_and_orbit(o.front()).arf);
              std::sort(rows.begin(), rows.end(), std::greater<>());
              Json sizes = Json::array(), arfs = Json::array();
              std::size_t total = 0;
              for (const auto& [size, arf] : rows) {
                sizes.push_back(size);
                arfs.push_back(arf);
                total += size;
              }
              return Json{{"sizes", sizes}, {"arf", arfs}, {"total", total}};
            });
    r.claim("orbit-stabilizer-g" + std::to_string(g), "|orbit| * |stabilizer| = |Sp_" + std::to_string(2 * g) + "(F_2)|",
            "derived", Json{{"group_order", sp_orders[gi]}, {"identity_holds", true}}, [g] {
              const std::uint64_t sp = symplectic_group_order(g);
              bool holds = true;
              for (const auto& o : refinement_orbits(g))
                holds = holds && o.size() * refinement_stabilizer_order(o.front()) == sp;
              return Json{{"group_order", sp}, {"identity_holds", holds}};
            });
  }
  r.claim("g1-examples", "g = 1: q(e) = q(f) = 0 and q(e) = q(f) = 1", "derived",
          Json::array({Json{{"arf", 0}, {"orbit", 3}}, Json{{"arf", 1}, {"orbit", 1}}}), [] {
            Json out = Json::array();
            for (int v : {0, 1}) {
              const std::vector<int> values{v, v};
              const auto ao = arf_and_orbit(QuadraticRefinementMod2::from_basis(1, values));
              out.push_back(Json{{"arf", ao.arf}, {"orbit", ao.orbit_size}});
            }
            return out;
          });
  r.note("Orbit sizes equal component counts under the standard surjection Aut(Lambda, b) -> Sp_2g(F_2); the surjection is assumed, not recomputed.");
  return r.finish();
}

using ScenarioFn = ScenarioReport (*)(const ScenarioOptions&);

const std::vector<std::pair<std::string, ScenarioFn>>& registry() {
  static const std::vector<std::pair<std::string, ScenarioFn>> table{
      {"genus3", genus3},
      {"genus4", genus4},
      {"cubic-surface-weyl", cubic_surface_weyl},
      {"cubic-threefold-hodge", cubic_threefold_hodge},
      {"cubic-fourfold-hodge", cubic_fourfold_hodge},
      {"nikulin-glue-smoke", nikulin_glue_smoke},
      {"minus-id-residues", minus_id_residues},
      {"components-odd-odd", components_odd_odd},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(opts);
  throw InputError("unknown scenario '" + name + "'");
}

}  // namespace latkit
