#include "latkit/isometry.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "latkit/errors.hpp"
#include "search_kernel.hpp"

namespace latkit {

using detail::SmallGram;
using detail::SmallMat;
using detail::SmallVec;

IsometryGroup::IsometryGroup(IntMatrix gram, std::vector<IntMatrix> generators, Integer order)
    : gram_(std::move(gram)), generators_(std::move(generators)), order_(std::move(order)) {}

// ---------------------------------------------------------------------------
// ElementTable

std::size_t ElementTable::hash_span(std::span<const std::int32_t> s) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : s) h = (h ^ static_cast<std::uint32_t>(x)) * 1099511628211ULL;
  return h;
}

std::size_t ElementTable::Hash::operator()(std::uint32_t idx) const { return table->hash_span(table->raw(idx)); }

bool ElementTable::Eq::operator()(std::uint32_t a, std::uint32_t b) const {
  auto x = table->raw(a);
  auto y = table->raw(b);
  return std::equal(x.begin(), x.end(), y.begin());
}

bool ElementTable::insert_last() {
  const auto idx = static_cast<std::uint32_t>(count_);
  ++count_;
  if (index_.insert(idx).second) return true;
  --count_;
  data_.resize(count_ * n_ * n_);
  return false;
}

ElementTable::ElementTable(const IntMatrix& gram, const std::vector<IntMatrix>& generators, std::uint64_t limit)
    : n_(gram.rows()) {
  const std::size_t nn = n_ * n_;
  std::vector<std::vector<std::int64_t>> gens;
  for (const auto& g : generators) gens.push_back(detail::to_small_mat(g));
  data_.resize(nn, 0);
  for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] = 1;
  insert_last();
  std::vector<std::int64_t> prod(nn);
  for (std::size_t head = 0; head < count_; ++head) {
    for (const auto& g : gens) {
      const auto a = raw(head);
      std::fill(prod.begin(), prod.end(), 0);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
          const std::int64_t x = a[i * n_ + k];
          if (x == 0) continue;
          for (std::size_t j = 0; j < n_; ++j) prod[i * n_ + j] += x * g[k * n_ + j];
        }
      for (auto v : prod)
        if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
          throw ResourceLimit("group element entries exceed 32 bits");
      for (auto v : prod) data_.push_back(static_cast<std::int32_t>(v));
      if (insert_last() && count_ > limit)
        throw ResourceLimit("group has more than " + std::to_string(limit) + " elements");
    }
  }
}

IntMatrix ElementTable::element(std::size_t i) const {
  IntMatrix m(n_, n_);
  auto r = raw(i);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) m(a, b) = static_cast<long>(r[a * n_ + b]);
  return m;
}

std::optional<std::size_t> ElementTable::find_raw(std::span<const std::int32_t> m) const {
  if (m.size() != n_ * n_) return std::nullopt;
  // probe by temporarily appending to a scratch copy of the hash key
  auto& self = const_cast<ElementTable&>(*this);
  self.data_.insert(self.data_.end(), m.begin(), m.end());
  const auto probe = static_cast<std::uint32_t>(count_);
  auto it = index_.find(probe);
  std::optional<std::size_t> out;
  if (it != index_.end()) out = *it;
  self.data_.resize(count_ * n_ * n_);
  return out;
}

std::optional<std::size_t> ElementTable::find(const IntMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) return std::nullopt;
  std::vector<std::int32_t> buf(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      if (!m(a, b).fits_sint_p()) return std::nullopt;
      buf[a * n_ + b] = static_cast<std::int32_t>(m(a, b).get_si());
    }
  return find_raw(buf);
}

// ---------------------------------------------------------------------------
// search preparation

namespace {

struct Prepared {
  bool negated = false;
  IntMatrix basis;      // rows: short basis in original coordinates
  IntMatrix basis_inv;  // inverse of basis
  SmallGram reduced;    // Gram of the short basis (positive)
  std::vector<SmallVec> vectors;  // both signs, reduced coordinates, sorted
  std::int64_t min_norm = 0;
  std::vector<std::uint32_t> basis_index;
};

std::vector<SmallVec> with_both_signs(std::vector<SmallVec> half) {
  std::vector<SmallVec> out;
  out.reserve(half.size() * 2);
  for (auto& v : half) {
    SmallVec neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    out.push_back(std::move(neg));
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix positive_gram(const Lattice& l, bool& negated) {
  const auto [p, q] = signature(l);
  if (p != 0 && q != 0) throw InputError("lattice is indefinite");
  negated = (p == 0 && l.rank() > 0);
  return negated ? -l.gram() : l.gram();
}

// Greedy basis of short vectors: scan by increasing norm, keep a vector when
// the chosen set stays primitive.
IntMatrix short_basis(const SmallGram& g, std::vector<SmallVec> vecs) {
  const std::size_t n = g.n;
  std::vector<std::pair<std::int64_t, SmallVec>> by_norm;
  for (auto& v : vecs) by_norm.emplace_back(detail::small_norm(g, v), std::move(v));
  std::sort(by_norm.begin(), by_norm.end());
  IntMatrix chosen(0, n);
  for (const auto& [nrm, v] : by_norm) {
    IntMatrix trial = chosen;
    IntVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<long>(v[i]);
    trial.append_row(row);
    auto snf = smith_normal_form(trial);
    if (snf.rank() != trial.rows()) continue;
    bool primitive = true;
    for (std::size_t i = 0; i < snf.rank(); ++i) primitive = primitive && snf.D(i, i) == 1;
    if (!primitive) continue;
    chosen = std::move(trial);
    if (chosen.rows() == n) return chosen;
  }
  return IntMatrix::identity(n);
}

SmallVec transform(const SmallVec& v, const SmallMat& m, std::size_t n) {
  SmallVec out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += v[k] * m[k * n + j];
  }
  return out;
}

Prepared prepare(const Lattice& l, std::int64_t vector_bound = 0) {
  Prepared p;
  const IntMatrix g = positive_gram(l, p.negated);
  const std::size_t n = l.rank();
  // enumerate in an LLL-reduced basis so the initial bound stays small
  const IntMatrix lll = lll_reduce_gram(g);
  const SmallGram sg = detail::to_small_gram(lll * g * lll.transpose());
  std::int64_t bound0 = 0;
  for (std::size_t i = 0; i < n; ++i) bound0 = std::max(bound0, sg.at(i, i));

  auto full = with_both_signs(detail::enumerate_short(sg, bound0));
  p.basis = short_basis(sg, full) * lll;
  p.basis_inv = unimodular_inverse(p.basis);
  p.reduced = detail::to_small_gram(p.basis * g * p.basis.transpose());

  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, p.reduced.at(i, i));
  if (vector_bound > 0) bound = vector_bound;
  if (bound <= bound0) {
    const SmallMat inv = detail::to_small_mat(lll * p.basis_inv);
    for (const auto& v : full)
      if (detail::small_norm(sg, v) <= bound) p.vectors.push_back(transform(v, inv, n));
    std::sort(p.vectors.begin(), p.vectors.end());
  } else {
    p.vectors = with_both_signs(detail::enumerate_short(p.reduced, bound));
  }
  p.min_norm = std::numeric_limits<std::int64_t>::max();
  for (const auto& v : p.vectors) p.min_norm = std::min(p.min_norm, detail::small_norm(p.reduced, v));

  for (std::size_t i = 0; i < n; ++i) {
    SmallVec e(n, 0);
    e[i] = 1;
    auto it = std::lower_bound(p.vectors.begin(), p.vectors.end(), e);
    if (it != p.vectors.end() && *it == e) p.basis_index.push_back(static_cast<std::uint32_t>(it - p.vectors.begin()));
  }
  return p;
}

using Fingerprint = std::vector<std::int64_t>;

std::vector<Fingerprint> fingerprints(const SmallGram& g, const std::vector<SmallVec>& vecs, std::int64_t min_norm) {
  const std::size_t n = g.n;
  std::vector<SmallVec> minimal_times;
  for (const auto& w : vecs) {
    if (detail::small_norm(g, w) != min_norm) continue;
    SmallVec gw(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) gw[a] += g.at(a, b) * w[b];
    minimal_times.push_back(std::move(gw));
  }
  std::vector<Fingerprint> out(vecs.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    Fingerprint f;
    f.reserve(minimal_times.size());
    for (const auto& gw : minimal_times) {
      std::int64_t s = 0;
      for (std::size_t a = 0; a < n; ++a) s += vecs[i][a] * gw[a];
      f.push_back(s);
    }
    std::sort(f.begin(), f.end());
    out[i] = std::move(f);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> level_candidates(const SmallGram& source, const Fingerprint* source_fp,
                                                         const SmallGram& target,
                                                         const std::vector<SmallVec>& vecs,
                                                         const std::vector<Fingerprint>& fps) {
  std::vector<std::vector<std::uint32_t>> out(source.n);
  std::vector<std::int64_t> norms(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) norms[i] = detail::small_norm(target, vecs[i]);
  for (std::size_t k = 0; k < source.n; ++k)
    for (std::uint32_t i = 0; i < vecs.size(); ++i)
      if (norms[i] == source.at(k, k) && fps[i] == source_fp[k]) out[k].push_back(i);
  return out;
}

}  // namespace

IsometryGroup automorphism_group(const Lattice& l, const SearchOptions& opts) {
  const std::size_t n = l.rank();
  if (n == 0) return IsometryGroup(l.gram(), {}, Integer(1));
  Prepared p = prepare(l);
  if (p.basis_index.size() != n) throw Error("short basis vectors missing from the candidate set");

  auto fps = fingerprints(p.reduced, p.vectors, p.min_norm);
  std::vector<Fingerprint> basis_fp;
  for (auto idx : p.basis_index) basis_fp.push_back(fps[idx]);
  auto cands = level_candidates(p.reduced, basis_fp.data(), p.reduced, p.vectors, fps);

  detail::BasisImageSearch search(p.reduced, p.reduced, p.vectors, std::move(cands), opts.max_nodes);
  auto chain = detail::stabilizer_chain(search, p.basis_index, opts.parallel);

  std::vector<IntMatrix> gens;
  for (const auto& g : chain.generators) {
    IntMatrix m = p.basis_inv * detail::to_int_matrix(g, n) * p.basis;
    if (!preserves_gram(m, l.gram())) throw Error("automorphism search produced a non-isometry");
    gens.push_back(std::move(m));
  }
  return IsometryGroup(l.gram(), std::move(gens), chain.order);
}

std::optional<IntMatrix> isometry_test(const Lattice& l1, const Lattice& l2, const SearchOptions& opts) {
  if (l1.rank() != l2.rank() || l1.det() != l2.det()) return std::nullopt;
  if (signature(l1) != signature(l2)) return std::nullopt;
  const std::size_t n = l1.rank();
  if (n == 0) return IntMatrix(0, 0);
  Prepared p1 = prepare(l1);
  if (p1.basis_index.size() != n) throw Error("short basis vectors missing from the candidate set");
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, p1.reduced.at(i, i));
  Prepared p2 = prepare(l2, bound);
  if (p1.min_norm != p2.min_norm) return std::nullopt;

  auto fp1 = fingerprints(p1.reduced, p1.vectors, p1.min_norm);
  auto fp2 = fingerprints(p2.reduced, p2.vectors, p2.min_norm);
  std::vector<Fingerprint> basis_fp;
  for (auto idx : p1.basis_index) basis_fp.push_back(fp1[idx]);
  auto cands = level_candidates(p1.reduced, basis_fp.data(), p2.reduced, p2.vectors, fp2);
  for (const auto& c : cands)
    if (c.empty()) return std::nullopt;

  detail::BasisImageSearch search(p1.reduced, p2.reduced, p2.vectors, std::move(cands), opts.max_nodes);
  auto images = search.first_completion({});
  if (!images) return std::nullopt;
  IntMatrix x = detail::to_int_matrix(search.matrix(*images), n);
  IntMatrix t = p1.basis_inv * x * p2.basis;
  if (t * l2.gram() * t.transpose() != l1.gram()) throw Error("isometry search produced an invalid map");
  return t;
}

IsometryGroup hyperbolic_automorphisms() {
  const IntMatrix u{{0, 1}, {1, 0}};
  std::vector<IntMatrix> listed{IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{-1, 0}, {0, -1}}, IntMatrix{{0, 1}, {1, 0}},
                                IntMatrix{{0, -1}, {-1, 0}}};
  // Any isometry permutes the two isotropic rays Z x1, Z x2 (up to sign), so
  // entries are bounded by 1 in absolute value.
  std::vector<IntMatrix> found;
  for (int code = 0; code < 81; ++code) {
    int c = code;
    IntMatrix m(2, 2);
    for (std::size_t k = 0; k < 4; ++k) {
      m(k / 2, k % 2) = (c % 3) - 1;
      c /= 3;
    }
    if (preserves_gram(m, u)) found.push_back(m);
  }
  auto key = [](const IntMatrix& m) {
    return std::vector<long>{m(0, 0).get_si(), m(0, 1).get_si(), m(1, 0).get_si(), m(1, 1).get_si()};
  };
  auto sorted_keys = [&](const std::vector<IntMatrix>& v) {
    std::vector<std::vector<long>> ks;
    for (const auto& m : v) ks.push_back(key(m));
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  if (sorted_keys(found) != sorted_keys(listed)) throw Error("hyperbolic plane isometry list failed verification");
  return IsometryGroup(u, {listed[1], listed[2]}, Integer(4));
}

namespace {

void raw_product(std::span<const std::int32_t> a, std::span<const std::int32_t> b, std::size_t n,
                 std::vector<std::int32_t>& out) {
  out.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int32_t x = a[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += x * b[k * n + j];
    }
}

// Greedy generating set for the subgroup consisting of `members` (indices into
// the table, closed under products by assumption).
IsometryGroup subgroup_from_members(const IsometryGroup& g, const ElementTable& table,
                                    const std::vector<std::size_t>& members) {
  const std::size_t n = table.dim();
  std::vector<char> covered(table.size(), 0);
  std::vector<std::size_t> gens;
  std::vector<std::int32_t> prod;
  std::size_t covered_count = 0;
  for (auto m : members) {
    if (covered[m]) continue;
    gens.push_back(m);
    std::fill(covered.begin(), covered.end(), 0);
    std::vector<std::size_t> queue{0};
    covered[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto gi : gens) {
        raw_product(table.raw(queue[head]), table.raw(gi), n, prod);
        auto idx = table.find_raw(prod);
        if (!idx) throw Error("subgroup closure left the group");
        if (!covered[*idx]) {
          covered[*idx] = 1;
          queue.push_back(*idx);
        }
      }
    covered_count = queue.size();
  }
  if (members.empty()) covered_count = 1;
  std::vector<IntMatrix> out;
  for (auto gi : gens)
    if (gi != 0) out.push_back(table.element(gi));
  return IsometryGroup(g.gram(), std::move(out), Integer(static_cast<unsigned long>(covered_count)));
}

}  // namespace

IsometryGroup centralizer(const IsometryGroup& g, const IntMatrix& target, std::uint64_t limit) {
  if (g.order() > limit) throw ResourceLimit("group too large for element enumeration");
  ElementTable table(g.gram(), g.generators(), limit);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const IntMatrix e = table.element(i);
    if (e * target == target * e) members.push_back(i);
  }
  return subgroup_from_members(g, table, members);
}

IsometryGroup vector_stabilizer(const IsometryGroup& g, const IntVector& v, std::uint64_t limit) {
  if (g.order() > limit) throw ResourceLimit("group too large for element enumeration");
  ElementTable table(g.gram(), g.generators(), limit);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (mul(v, table.element(i)) == v) members.push_back(i);
  return subgroup_from_members(g, table, members);
}

std::vector<IntVector> orbit(const IsometryGroup& g, const IntVector& v, std::uint64_t limit) {
  std::vector<IntVector> out{v};
  std::set<IntVector> seen{v};
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& gen : g.generators()) {
      IntVector w = mul(out[head], gen);
      if (seen.insert(w).second) {
        out.push_back(std::move(w));
        if (out.size() > limit) throw ResourceLimit("orbit exceeds limit");
      }
    }
  return out;
}

}  // namespace latkit
