#include "resolvent/homology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "resolvent/errors.hpp"
#include "resolvent/exterior.hpp"

namespace resolvent {

std::size_t fp_rank(FpMatrix m) {
  const Coeff p = m.p;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t k = c; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(rank, k));
    std::uint64_t inv = 1, base = m.at(rank, c), e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      const Coeff x = m.at(r, c);
      if (!x) continue;
      const std::uint64_t f = (p - x) * inv % p;
      Coeff* dst = &m.at(r, 0);
      const Coeff* src = &m.at(rank, 0);
      for (std::size_t k = c; k < m.cols; ++k)
        if (src[k]) dst[k] = static_cast<Coeff>((dst[k] + f * src[k]) % p);
    }
    ++rank;
  }
  return rank;
}

GradedRing::GradedRing(QuotientPtr q, int max_degree) : q_(std::move(q)), max_degree_(std::max(max_degree, 0)) {
  basis_.resize(max_degree_ + 1);
  index_.resize(max_degree_ + 1);
  for (int d = 0; d <= max_degree_; ++d) {
    basis_[d] = q_->standard_monomials(d);
    for (std::size_t i = 0; i < basis_[d].size(); ++i) index_[d][basis_[d][i].exponents()] = static_cast<std::uint32_t>(i);
  }
  const std::size_t nv = q_->base()->nvars();
  for (int d = 0; d <= max_degree_; ++d)
    for (const auto& m : monomials_of_degree(nv, d)) {
      Row row;
      auto it = index_[d].find(m.exponents());
      if (it != index_[d].end()) {
        row.entries.push_back({it->second, 1});
      } else {
        Poly nf = q_->normal_form(Poly::monomial(q_->base(), m));
        for (const auto& t : nf.terms()) row.entries.push_back({index_[d].at(t.mono.exponents()), t.coeff});
      }
      nf_.emplace(m.exponents(), std::move(row));
    }
}

const std::vector<Monomial>& GradedRing::basis(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  if (d > max_degree_) throw ConstructionError("graded piece beyond the precomputed degree " + std::to_string(max_degree_));
  return basis_[d];
}

const GradedRing::Row& GradedRing::normal_row(const Monomial& m) const {
  auto it = nf_.find(m.exponents());
  if (it == nf_.end()) throw ConstructionError("monomial beyond the precomputed degree " + std::to_string(max_degree_));
  return it->second;
}

void GradedRing::multiply_into(const Monomial& m, const Poly& p, std::vector<Coeff>& out) const {
  const Coeff prime = q_->base()->prime();
  for (const auto& t : p.terms())
    for (const auto& [idx, c] : normal_row(m * t.mono).entries)
      out[idx] = static_cast<Coeff>((out[idx] + std::uint64_t(c) * t.coeff) % prime);
}

std::vector<std::size_t> piece_offsets(const FreeMod& m, const GradedRing& ring, int d) {
  std::vector<std::size_t> off(m.rank() + 1, 0);
  for (std::size_t i = 0; i < m.rank(); ++i) off[i + 1] = off[i] + ring.dim(d - m[i].degree);
  return off;
}

std::size_t piece_dim(const FreeMod& m, const GradedRing& ring, int d) { return piece_offsets(m, ring, d).back(); }

FpMatrix graded_piece(const HomogMatrix& mat, const GradedRing& ring, int d) {
  const auto ro = piece_offsets(mat.rows(), ring, d);
  const auto co = piece_offsets(mat.cols(), ring, d);
  FpMatrix out(ro.back(), co.back(), ring.quotient()->base()->prime());
  std::vector<Coeff> buf;
  for (std::size_t c = 0; c < mat.ncols(); ++c) {
    const auto& mons = ring.basis(d - mat.cols()[c].degree);
    for (std::size_t k = 0; k < mons.size(); ++k)
      for (std::size_t r = 0; r < mat.nrows(); ++r) {
        const Poly& e = mat.at(r, c);
        if (e.is_zero()) continue;
        buf.assign(ro[r + 1] - ro[r], 0);
        ring.multiply_into(mons[k], e, buf);
        for (std::size_t i = 0; i < buf.size(); ++i) out.at(ro[r] + i, co[c] + k) = buf[i];
      }
  }
  return out;
}

std::int64_t HilbertTable::at(int n, int d) const {
  auto it = dims.find({n, d});
  return it == dims.end() ? 0 : it->second;
}

std::int64_t HilbertTable::total(int n) const {
  std::int64_t t = 0;
  for (int d = d_min; d <= d_max; ++d) t += at(n, d);
  return t;
}

nlohmann::ordered_json HilbertTable::to_json() const {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array(), rows = nlohmann::ordered_json::array();
  for (const auto& [k, v] : dims) entries.push_back({{"n", k.first}, {"d", k.second}, {"dim", v}});
  for (int n = n_min; n <= n_max; ++n) {
    auto it = reliable.find(n);
    rows.push_back({{"n", n},
                    {"total", total(n)},
                    {"reliable", it != reliable.end() && it->second},
                    {"edge", n == n_min || n == n_max}});
  }
  return {{"window", {n_min, n_max}}, {"degrees", {d_min, d_max}}, {"entries", entries}, {"rows", rows}};
}

unsigned configured_threads() {
  if (const char* env = std::getenv("RESOLVENT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void run_jobs(std::vector<std::function<void()>>& jobs, unsigned threads) {
  if (threads == 0) threads = configured_threads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  if (threads <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        try {
          jobs[i]();
        } catch (...) {
          std::lock_guard lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

int least_degree(const GradedComplex& c, int a, int b, int fallback) {
  int lo = fallback;
  for (int n = a; n <= b; ++n)
    if (c.has(n) && c.module(n).rank()) lo = std::min(lo, c.module(n).min_degree());
  return lo;
}

}  // namespace

HilbertTable homology_table(const GradedComplex& c, const DegreeWindow& w, unsigned threads) {
  HilbertTable t;
  t.n_min = w.n_min;
  t.n_max = w.n_max;
  t.d_max = w.D;
  t.d_min = std::min(least_degree(c, w.n_min, w.n_max, w.D), w.D);
  const int ring_lo = std::min(least_degree(c, w.n_min - 1, w.n_max + 1, w.D), t.d_min);
  GradedRing ring(c.ring(), w.D - ring_lo);

  const int nd = t.d_max - t.d_min + 1;
  const int nn = w.n_max - w.n_min + 2;  // differentials d_{n_min} .. d_{n_max+1}
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(nn) * nd, 0);
  std::vector<std::function<void()>> jobs;
  for (int i = 0; i < nn; ++i) {
    const int n = w.n_min + i;
    if (!c.has_diff(n)) continue;
    for (int j = 0; j < nd; ++j)
      jobs.push_back([&, n, i, j] {
        ranks[static_cast<std::size_t>(i) * nd + j] =
            static_cast<std::int64_t>(fp_rank(graded_piece(c.diff(n), ring, t.d_min + j)));
      });
  }
  run_jobs(jobs, threads);

  for (int n = w.n_min; n <= w.n_max; ++n) {
    if (!c.has(n)) {
      t.reliable[n] = c.zero_at(n);
      continue;
    }
    t.reliable[n] = c.homology_reliable(n);
    const int i = n - w.n_min;
    for (int j = 0; j < nd; ++j) {
      const std::int64_t dim = static_cast<std::int64_t>(piece_dim(c.module(n), ring, t.d_min + j));
      const std::int64_t h = dim - ranks[static_cast<std::size_t>(i) * nd + j] - ranks[static_cast<std::size_t>(i + 1) * nd + j];
      if (h) t.dims[{n, t.d_min + j}] = h;
    }
  }
  return t;
}

namespace {

std::optional<Cell> first_nonzero_interior(const HilbertTable& t) {
  for (int n = t.n_min + 1; n < t.n_max; ++n) {
    auto it = t.reliable.find(n);
    if (it == t.reliable.end() || !it->second) return Cell{n, t.d_min, 0, -1};
    for (int d = t.d_min; d <= t.d_max; ++d)
      if (t.at(n, d)) return Cell{n, d, 0, t.at(n, d)};
  }
  return std::nullopt;
}

HilbertTable reindex_cohomology(const HilbertTable& t) {
  HilbertTable out;
  out.n_min = -t.n_max;
  out.n_max = -t.n_min;
  out.d_min = t.d_min;
  out.d_max = t.d_max;
  for (const auto& [k, v] : t.dims) out.dims[{-k.first, k.second}] = v;
  for (const auto& [n, ok] : t.reliable) out.reliable[-n] = ok;
  return out;
}

}  // namespace

ExactnessVerdict verify_exactness(const GradedComplex& T, const DegreeWindow& w, unsigned threads) {
  ExactnessVerdict v;
  if (auto cell = first_nonzero_interior(homology_table(T, w, threads))) {
    v.ok = false;
    v.counterexample = cell;
    v.where = "T";
    return v;
  }
  const DegreeWindow mirrored{-w.n_max, -w.n_min, w.D};
  if (auto cell = first_nonzero_interior(homology_table(dual(T), mirrored, threads))) {
    v.ok = false;
    v.counterexample = cell;
    v.where = "T*";
  }
  return v;
}

std::optional<int> find_uniform_shift(const std::map<int, std::int64_t>& row, const std::vector<std::int64_t>& reference,
                                      int d_lo, int d_hi, int bound) {
  bool nonzero = false;
  for (int d = d_lo; d <= d_hi; ++d) {
    auto it = row.find(d);
    if (it != row.end() && it->second) nonzero = true;
  }
  if (!nonzero) return std::nullopt;
  auto ref = [&](int e) -> std::int64_t {
    if (e < 0) return 0;
    if (e >= static_cast<int>(reference.size())) return -1;
    return reference[e];
  };
  for (int a = 0; a <= bound; ++a)
    for (int s : {a, -a}) {
      if (a == 0 && s < 0) continue;
      bool ok = true;
      for (int d = d_lo; d <= d_hi && ok; ++d) {
        auto it = row.find(d);
        const std::int64_t have = it == row.end() ? 0 : it->second;
        const std::int64_t want = ref(d - s);
        if (want < 0 || want != have) ok = false;
      }
      if (ok) return s;
    }
  return std::nullopt;
}

nlohmann::ordered_json ResolutionVerdict::to_json() const {
  auto cells = [](const std::vector<Cell>& v) {
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (const auto& c : v) f.push_back({{"n", c.n}, {"d", c.d}, {"expected", c.expected}, {"found", c.found}});
    return f;
  };
  nlohmann::ordered_json j{{"ok", ok}, {"failures", cells(failures)}, {"ext_failures", cells(ext_failures)}};
  j["ext_shift"] = ext_shift ? nlohmann::ordered_json(*ext_shift) : nlohmann::ordered_json(nullptr);
  j["tor"] = tor_table.to_json();
  j["ext"] = ext_table.to_json();
  return j;
}

ResolutionVerdict verify_tate_is_resolution(const Instance& inst, const GradedComplex& F, int D, unsigned threads) {
  ResolutionVerdict v;
  const int top = F.hi();
  const int g = inst.grade();
  v.tor_table = homology_table(F, {0, top, D}, threads);
  for (int n = 0; n < top; ++n)
    for (int d = v.tor_table.d_min; d <= D; ++d) {
      const std::int64_t want = n == 0 && d >= 0 ? static_cast<std::int64_t>(inst.R_mod_J->graded_dim(d)) : 0;
      if (v.tor_table.at(n, d) != want) v.failures.push_back({n, d, want, v.tor_table.at(n, d)});
    }

  v.ext_table = reindex_cohomology(homology_table(dual(F), {-top, 0, D}, threads));
  const auto& et = v.ext_table;
  for (int i = 0; i < top; ++i) {
    if (i == g) continue;
    for (int d = et.d_min; d <= D; ++d)
      if (et.at(i, d)) v.ext_failures.push_back({i, d, 0, et.at(i, d)});
  }
  if (g < top) {
    std::map<int, std::int64_t> row;
    for (int d = et.d_min; d <= D; ++d) row[d] = et.at(g, d);
    const int span = D - et.d_min;
    std::vector<std::int64_t> ref;
    for (int e = 0; e <= 2 * span; ++e) ref.push_back(static_cast<std::int64_t>(inst.R_mod_J->graded_dim(e)));
    v.ext_shift = find_uniform_shift(row, ref, et.d_min, D, span);
    if (!v.ext_shift) v.ext_failures.push_back({g, et.d_min, -1, et.total(g)});
  } else {
    v.ext_failures.push_back({g, 0, -1, -1});
  }
  v.ok = v.failures.empty() && v.ext_failures.empty();
  return v;
}

HilbertTable stable_tor(const GradedComplex& T, const QuotientPtr& N, const DegreeWindow& w, unsigned threads) {
  return homology_table(base_change(T, N), w, threads);
}

HilbertTable stable_ext(const GradedComplex& T, const QuotientPtr& N, const DegreeWindow& w, unsigned threads) {
  return reindex_cohomology(homology_table(base_change(dual(T), N), {-w.n_max, -w.n_min, w.D}, threads));
}

nlohmann::ordered_json DualityVerdict::to_json() const {
  nlohmann::ordered_json j{{"pairing", pairing}, {"ok", ok}, {"totals_ok", totals_ok}};
  j["shift"] = shift ? nlohmann::ordered_json(*shift) : nlohmann::ordered_json(nullptr);
  j["compared"] = compared;
  if (counterexample)
    j["counterexample"] = {{"n", counterexample->n},
                           {"d", counterexample->d},
                           {"tor", counterexample->expected},
                           {"ext", counterexample->found}};
  j["message"] = message;
  return j;
}

namespace {

bool interior_reliable(const HilbertTable& t, int n) {
  if (n <= t.n_min || n >= t.n_max) return false;
  auto it = t.reliable.find(n);
  return it != t.reliable.end() && it->second;
}

bool shift_works(const HilbertTable& tor, const HilbertTable& ext, const std::vector<std::pair<int, int>>& pairs, int s,
                 Cell* bad) {
  // tor(n, d) == ext(m, d - s) wherever both degrees are known (<= D)
  const int lo = std::min(tor.d_min, ext.d_min + s);
  const int hi = std::min(tor.d_max, ext.d_max + s);
  for (const auto& [n, m] : pairs)
    for (int d = lo; d <= hi; ++d)
      if (tor.at(n, d) != ext.at(m, d - s)) {
        if (bad) *bad = Cell{n, d, tor.at(n, d), ext.at(m, d - s)};
        return false;
      }
  return true;
}

}  // namespace

DualityVerdict compare_stable(const HilbertTable& tor, const HilbertTable& ext, int (*partner)(int n, int g), int g,
                              const std::string& name, int D) {
  DualityVerdict v;
  v.pairing = name;
  std::vector<std::pair<int, int>> pairs;
  for (int n = tor.n_min + 1; n < tor.n_max; ++n) {
    const int m = partner(n, g);
    if (interior_reliable(tor, n) && interior_reliable(ext, m)) {
      pairs.push_back({n, m});
      v.compared.push_back(n);
    }
  }
  for (const auto& [n, m] : pairs)
    if (tor.total(n) != ext.total(m)) v.totals_ok = false;
  if (pairs.empty()) {
    v.ok = false;
    v.message = "no index pair lies inside both windows";
    return v;
  }
  for (int a = 0; a <= D / 2 && !v.shift; ++a)
    for (int s : {a, -a}) {
      if (a == 0 && s < 0) continue;
      if (shift_works(tor, ext, pairs, s, nullptr)) {
        v.shift = s;
        break;
      }
    }
  if (v.shift && v.totals_ok) {
    v.message = "degreewise agreement with internal shift " + std::to_string(*v.shift);
    return v;
  }
  v.ok = false;
  for (const auto& [n, m] : pairs)
    if (tor.total(n) != ext.total(m)) {
      v.counterexample = Cell{n, tor.d_min, tor.total(n), ext.total(m)};
      v.message = "total dimensions differ at n = " + std::to_string(n) + " (partner " + std::to_string(m) + ")";
      return v;
    }
  Cell bad;
  shift_works(tor, ext, pairs, 0, &bad);
  v.counterexample = bad;
  v.message = "totals agree but no uniform internal shift matches degreewise";
  return v;
}

DualityVerdict verify_stable_duality(const HilbertTable& tor, const HilbertTable& ext, int g, int D) {
  return compare_stable(
      tor, ext, [](int n, int gg) { return n + gg - 1; }, g, "Tor_n ~ Ext^{n+g-1}", D);
}

DualityVerdict verify_phi_duality(const HilbertTable& tor, const HilbertTable& ext, int g, int D) {
  return compare_stable(
      tor, ext, [](int n, int gg) { return gg - 1 - n; }, g, "Tor_n ~ Ext^{g-1-n}", D);
}

nlohmann::ordered_json KoszulBasisVerdict::to_json() const {
  return {{"l", l}, {"ok", ok}, {"homology", homology}, {"expected", expected}, {"unspanned", unspanned}};
}

KoszulBasisVerdict koszul_basis_check(const Instance& inst, int l, int D) {
  KoszulBasisVerdict v;
  v.l = l;
  const int s = static_cast<int>(inst.s()), r = static_cast<int>(inst.r());
  auto K = koszul_complex(inst.g, inst.R);
  GradedRing ring(inst.R, D);
  const auto cycles = koszul_homology_basis(inst, l);
  const auto subs = subsets_of_size(s, l);
  const Coeff p = inst.ring->prime();

  for (int d = 0; d <= D; ++d) {
    std::int64_t want = 0;
    for (const auto& J : subsets_of_size(r, l)) {
      int deg = 0;
      for (int j : J) deg += inst.f_degrees[j - 1];
      if (d >= deg) want += static_cast<std::int64_t>(inst.R_mod_J->graded_dim(d - deg));
    }
    v.expected.push_back(want);
    if (l < 0 || l > s) {
      v.homology.push_back(0);
      if (want) v.ok = false;
      continue;
    }
    const FreeMod& Kl = K.module(l);
    const std::int64_t dim = static_cast<std::int64_t>(piece_dim(Kl, ring, d));
    const std::int64_t rk_out = l >= 1 ? static_cast<std::int64_t>(fp_rank(graded_piece(K.diff(l), ring, d))) : 0;
    FpMatrix B = l < s ? graded_piece(K.diff(l + 1), ring, d) : FpMatrix(static_cast<std::size_t>(dim), 0, p);
    const std::int64_t rk_in = static_cast<std::int64_t>(fp_rank(B));
    const std::int64_t h = dim - rk_out - rk_in;
    v.homology.push_back(h);
    if (h != want) v.ok = false;

    // append m * z for every cycle z and standard monomial m
    const auto off = piece_offsets(Kl, ring, d);
    std::vector<std::vector<Coeff>> extra;
    for (const auto& z : cycles)
      for (const auto& m : ring.basis(d - z.degree)) {
        std::vector<Coeff> col(static_cast<std::size_t>(dim), 0);
        for (const auto& [S, poly] : z.element) {
          const std::size_t idx = std::lower_bound(subs.begin(), subs.end(), S) - subs.begin();
          std::vector<Coeff> buf(off[idx + 1] - off[idx], 0);
          ring.multiply_into(m, poly, buf);
          for (std::size_t i = 0; i < buf.size(); ++i) col[off[idx] + i] = buf[i];
        }
        extra.push_back(std::move(col));
      }
    FpMatrix BZ(B.rows, B.cols + extra.size(), p);
    for (std::size_t i = 0; i < B.rows; ++i) {
      for (std::size_t k = 0; k < B.cols; ++k) BZ.at(i, k) = B.at(i, k);
      for (std::size_t k = 0; k < extra.size(); ++k) BZ.at(i, B.cols + k) = extra[k][i];
    }
    if (static_cast<std::int64_t>(fp_rank(BZ)) - rk_in != h) {
      v.ok = false;
      v.unspanned.push_back(d);
    }
  }
  return v;
}

}  // namespace resolvent
