#include "resolvent/complex.hpp"

#include <algorithm>
#include <set>

#include "resolvent/errors.hpp"

namespace resolvent {

// ----------------------------------------------------------------- FreeMod

FreeMod::FreeMod(std::vector<BasisLabel> basis) : basis_(std::move(basis)) {
  std::set<std::pair<std::string, bool>> seen;
  for (const auto& b : basis_)
    if (!seen.insert({b.tag, b.dual}).second) throw ConstructionError("duplicate basis label " + b.display());
}

std::optional<std::size_t> FreeMod::index_of(const std::string& tag, bool dual) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].tag == tag && basis_[i].dual == dual) return i;
  return std::nullopt;
}

FreeMod FreeMod::dual() const {
  std::vector<BasisLabel> b;
  b.reserve(basis_.size());
  for (const auto& l : basis_) b.push_back(l.dualized());
  FreeMod m;
  m.basis_ = std::move(b);
  return m;
}

FreeMod FreeMod::twisted(int t) const {
  FreeMod m(*this);
  for (auto& l : m.basis_) l.degree += t;
  return m;
}

FreeMod FreeMod::direct_sum(const FreeMod& o) const {
  std::vector<BasisLabel> b = basis_;
  b.insert(b.end(), o.basis_.begin(), o.basis_.end());
  return FreeMod(std::move(b));
}

int FreeMod::min_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) d = i ? std::min(d, basis_[i].degree) : basis_[i].degree;
  return d;
}

int FreeMod::max_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) d = i ? std::max(d, basis_[i].degree) : basis_[i].degree;
  return d;
}

// ------------------------------------------------------------- HomogMatrix

HomogMatrix::HomogMatrix(QuotientPtr ring, FreeMod rows, FreeMod cols)
    : ring_(std::move(ring)), rows_(std::move(rows)), cols_(std::move(cols)) {
  entries_.assign(rows_.rank() * cols_.rank(), Poly(ring_->base()));
}

HomogMatrix HomogMatrix::identity(QuotientPtr ring, const FreeMod& m) {
  HomogMatrix id(ring, m, m);
  for (std::size_t i = 0; i < m.rank(); ++i) id.set(i, i, Poly::constant(ring->base(), 1));
  return id;
}

void HomogMatrix::set(std::size_t r, std::size_t c, const Poly& p) {
  Poly nf = ring_->normal_form(p);
  if (!nf.is_zero()) {
    auto d = nf.homogeneous_degree();
    int want = cols_[c].degree - rows_[r].degree;
    if (!d || *d != want)
      throw ConstructionError("entry " + nf.to_string() + " at (" + rows_[r].display() + ", " + cols_[c].display() +
                              ") is not homogeneous of degree " + std::to_string(want));
  }
  entries_[r * ncols() + c] = std::move(nf);
}

HomogMatrix HomogMatrix::transpose() const {
  HomogMatrix t(ring_, cols_.dual(), rows_.dual());
  for (std::size_t r = 0; r < nrows(); ++r)
    for (std::size_t c = 0; c < ncols(); ++c) t.entries_[c * t.ncols() + r] = at(r, c);
  return t;
}

HomogMatrix HomogMatrix::operator*(const HomogMatrix& rhs) const {
  if (ring_ != rhs.ring_) throw ContextError("matrices over different rings");
  if (ncols() != rhs.nrows()) throw ConstructionError("composition of incompatible matrices");
  HomogMatrix out(ring_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < nrows(); ++r)
    for (std::size_t c = 0; c < rhs.ncols(); ++c) {
      Poly sum(ring_->base());
      for (std::size_t k = 0; k < ncols(); ++k) {
        const Poly& a = at(r, k);
        if (a.is_zero()) continue;
        const Poly& b = rhs.at(k, c);
        if (b.is_zero()) continue;
        sum += a * b;
      }
      if (!sum.is_zero()) out.set(r, c, sum);
    }
  return out;
}

HomogMatrix HomogMatrix::operator+(const HomogMatrix& rhs) const {
  if (ring_ != rhs.ring_) throw ContextError("matrices over different rings");
  if (nrows() != rhs.nrows() || ncols() != rhs.ncols()) throw ConstructionError("sum of matrices of different shapes");
  HomogMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + rhs.entries_[i];
  return out;
}

HomogMatrix HomogMatrix::operator-() const {
  HomogMatrix out(*this);
  for (auto& e : out.entries_) e = -e;
  return out;
}

HomogMatrix HomogMatrix::operator-(const HomogMatrix& rhs) const { return *this + (-rhs); }

HomogMatrix HomogMatrix::scaled(std::int64_t c) const {
  HomogMatrix out(*this);
  for (auto& e : out.entries_) e = e.scaled(c);
  return out;
}

bool HomogMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool HomogMatrix::operator==(const HomogMatrix& o) const {
  if (nrows() != o.nrows() || ncols() != o.ncols()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != o.entries_[i]) return false;
  return true;
}

HomogMatrix HomogMatrix::relabeled(FreeMod rows, FreeMod cols) const {
  if (rows.rank() != nrows() || cols.rank() != ncols()) throw ConstructionError("relabel with wrong ranks");
  HomogMatrix out(ring_, std::move(rows), std::move(cols));
  for (std::size_t r = 0; r < nrows(); ++r)
    for (std::size_t c = 0; c < ncols(); ++c)
      if (!at(r, c).is_zero()) out.set(r, c, at(r, c));
  return out;
}

HomogMatrix HomogMatrix::base_changed(const QuotientPtr& ring) const {
  HomogMatrix out(ring, rows_, cols_);
  for (std::size_t r = 0; r < nrows(); ++r)
    for (std::size_t c = 0; c < ncols(); ++c)
      if (!at(r, c).is_zero()) out.set(r, c, at(r, c));
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> HomogMatrix::unit_entry() const {
  for (std::size_t r = 0; r < nrows(); ++r)
    for (std::size_t c = 0; c < ncols(); ++c)
      if (at(r, c).constant_term() != 0) return std::make_pair(r, c);
  return std::nullopt;
}

namespace {
nlohmann::ordered_json labels_json(const FreeMod& m) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& l : m.basis()) arr.push_back({{"tag", l.tag}, {"degree", l.degree}, {"dual", l.dual}});
  return arr;
}
}  // namespace

nlohmann::ordered_json HomogMatrix::to_json() const {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < nrows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < ncols(); ++c) row.push_back(at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["rows"] = labels_json(rows_);
  j["cols"] = labels_json(cols_);
  j["entries"] = std::move(rows);
  return j;
}

// ----------------------------------------------------------- GradedComplex

GradedComplex::GradedComplex(QuotientPtr ring, int lo, int hi, std::map<int, FreeMod> modules,
                             std::map<int, HomogMatrix> diffs, bool closed_below, bool closed_above)
    : ring_(std::move(ring)), lo_(lo), hi_(hi), closed_below_(closed_below), closed_above_(closed_above) {
  if (lo > hi) throw ConstructionError("empty complex window");
  for (int n = lo; n <= hi; ++n) {
    auto it = modules.find(n);
    if (it == modules.end()) throw ConstructionError("missing module at index " + std::to_string(n));
    modules_.emplace(n, std::move(it->second));
  }
  for (int n = lo + 1; n <= hi; ++n) {
    auto it = diffs.find(n);
    if (it == diffs.end()) throw ConstructionError("missing differential at index " + std::to_string(n));
    HomogMatrix& d = it->second;
    if (d.ring() != ring_) throw ContextError("differential over a different ring");
    if (d.ncols() != modules_.at(n).rank() || d.nrows() != modules_.at(n - 1).rank())
      throw ConstructionError("differential d_" + std::to_string(n) + " has the wrong shape");
    diffs_.emplace(n, std::move(d));
  }
  if (closed_below_) diffs_.emplace(lo, HomogMatrix(ring_, FreeMod{}, modules_.at(lo)));
  if (closed_above_) diffs_.emplace(hi + 1, HomogMatrix(ring_, modules_.at(hi), FreeMod{}));
  auto bad = square_zero_failures();
  if (!bad.empty()) throw ConstructionError("d*d != 0 at index " + std::to_string(bad.front()));
}

bool GradedComplex::homology_reliable(int n) const { return has(n) && has_diff(n) && has_diff(n + 1); }

const FreeMod& GradedComplex::module(int n) const {
  auto it = modules_.find(n);
  if (it == modules_.end()) throw ConstructionError("no module at index " + std::to_string(n));
  return it->second;
}

const HomogMatrix& GradedComplex::diff(int n) const {
  auto it = diffs_.find(n);
  if (it == diffs_.end()) throw ConstructionError("no differential at index " + std::to_string(n));
  return it->second;
}

std::vector<int> GradedComplex::square_zero_failures() const {
  std::vector<int> bad;
  for (int n = lo_ + 1; n <= hi_; ++n)
    if (has_diff(n - 1) && !(diff(n - 1) * diff(n)).is_zero()) bad.push_back(n);
  return bad;
}

int GradedComplex::min_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& [n, m] : modules_)
    if (m.rank()) {
      d = first ? m.min_degree() : std::min(d, m.min_degree());
      first = false;
    }
  return d;
}

int GradedComplex::max_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& [n, m] : modules_)
    if (m.rank()) {
      d = first ? m.max_degree() : std::max(d, m.max_degree());
      first = false;
    }
  return d;
}

nlohmann::ordered_json GradedComplex::to_json() const {
  nlohmann::ordered_json j;
  j["window"] = {lo_, hi_};
  j["closed_below"] = closed_below_;
  j["closed_above"] = closed_above_;
  auto mods = nlohmann::ordered_json::array();
  for (int n = lo_; n <= hi_; ++n) {
    nlohmann::ordered_json m;
    m["n"] = n;
    m["rank"] = module(n).rank();
    m["labels"] = labels_json(module(n));
    if (n > lo_) m["differential"] = diff(n).to_json()["entries"];
    mods.push_back(std::move(m));
  }
  j["modules"] = std::move(mods);
  return j;
}

// --------------------------------------------------------------- operators

GradedComplex dual(const GradedComplex& c) {
  std::map<int, FreeMod> mods;
  std::map<int, HomogMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) mods.emplace(-n, c.module(n).dual());
  // dual d_m = (d_{1-m})^T for -hi < m <= -lo
  for (int m = -c.hi() + 1; m <= -c.lo(); ++m) diffs.emplace(m, c.diff(1 - m).transpose());
  return GradedComplex(c.ring(), -c.hi(), -c.lo(), std::move(mods), std::move(diffs), c.closed_above(),
                       c.closed_below());
}

GradedComplex shift(const GradedComplex& c, int i) {
  std::map<int, FreeMod> mods;
  std::map<int, HomogMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) mods.emplace(n + i, c.module(n));
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.emplace(n + i, c.diff(n));
  return GradedComplex(c.ring(), c.lo() + i, c.hi() + i, std::move(mods), std::move(diffs), c.closed_below(),
                       c.closed_above());
}

GradedComplex twist(const GradedComplex& c, int t) {
  std::map<int, FreeMod> mods;
  std::map<int, HomogMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) mods.emplace(n, c.module(n).twisted(t));
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.emplace(n, c.diff(n).relabeled(mods.at(n - 1), mods.at(n)));
  return GradedComplex(c.ring(), c.lo(), c.hi(), std::move(mods), std::move(diffs), c.closed_below(),
                       c.closed_above());
}

GradedComplex base_change(const GradedComplex& c, const QuotientPtr& ring) {
  if (!ring->contains_ideal(*c.ring())) throw ContextError("base change needs a quotient of the complex's ring");
  std::map<int, FreeMod> mods;
  std::map<int, HomogMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) mods.emplace(n, c.module(n));
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.emplace(n, c.diff(n).base_changed(ring));
  return GradedComplex(ring, c.lo(), c.hi(), std::move(mods), std::move(diffs), c.closed_below(), c.closed_above());
}

// --------------------------------------------------------------- chain maps

namespace {

HomogMatrix component_or_zero(const ChainMap& phi, int n) {
  auto it = phi.comps.find(n);
  if (it != phi.comps.end()) return it->second;
  return HomogMatrix(phi.source->ring(), phi.target->module(n + phi.shift), phi.source->module(n));
}

}  // namespace

ChainMapReport verify_chain_map(const ChainMap& phi) {
  ChainMapReport report;
  const auto& src = *phi.source;
  const auto& tgt = *phi.target;
  for (const auto& [n, comp] : phi.comps) {
    if (!src.has(n) || !tgt.has(n + phi.shift)) throw ChainMapError("component " + std::to_string(n) + " out of window");
    if (comp.nrows() != tgt.module(n + phi.shift).rank() || comp.ncols() != src.module(n).rank())
      throw ChainMapError("component " + std::to_string(n) + " has the wrong shape");
  }
  for (int n = src.lo(); n <= src.hi(); ++n) {
    int m = n + phi.shift;
    if (tgt.zero_at(m - 1) || !tgt.has(m - 1)) continue;
    std::optional<HomogMatrix> lhs, rhs;
    if (tgt.zero_at(m)) {
      lhs = HomogMatrix(src.ring(), tgt.module(m - 1), src.module(n));
    } else if (tgt.has(m)) {
      lhs = tgt.diff(m) * component_or_zero(phi, n);
    }
    if (src.zero_at(n - 1)) {
      rhs = HomogMatrix(src.ring(), tgt.module(m - 1), src.module(n));
    } else if (src.has(n - 1)) {
      rhs = component_or_zero(phi, n - 1) * src.diff(n);
    }
    if (!lhs || !rhs) continue;
    report.checked.push_back(n);
    HomogMatrix residual = *lhs - *rhs;
    if (!residual.is_zero()) report.failures.push_back({n, std::move(residual)});
  }
  return report;
}

ConeComplex cone(const ChainMap& phi, int lo, int hi) {
  auto report = verify_chain_map(phi);
  if (!report.ok())
    throw ChainMapError("cone of a map that is not a chain map (square " + std::to_string(report.failures.front().index) +
                        " fails)");
  const auto& X = *phi.source;
  const auto& Y = *phi.target;
  const int k = phi.shift;
  auto part = [](const GradedComplex& c, int n, const char* what) {
    if (c.has(n)) return c.module(n);
    if (c.zero_at(n)) return FreeMod{};
    throw ConstructionError(std::string("cone window exceeds the ") + what + " window at index " + std::to_string(n));
  };

  ConeComplex out;
  std::map<int, FreeMod> mods;
  std::map<int, FreeMod> ypart, xpart;
  for (int n = lo; n <= hi; ++n) {
    ypart[n] = part(Y, n + 1 + k, "target");
    xpart[n] = part(X, n, "source");
    mods.emplace(n, ypart[n].direct_sum(xpart[n]));
    out.target_block_size[n] = ypart[n].rank();
  }
  std::map<int, HomogMatrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    HomogMatrix D(X.ring(), mods.at(n - 1), mods.at(n));
    const std::size_t yr = ypart[n - 1].rank(), yc = ypart[n].rank();
    if (yr && yc) {
      const auto& dy = Y.diff(n + 1 + k);
      for (std::size_t r = 0; r < yr; ++r)
        for (std::size_t c = 0; c < yc; ++c)
          if (!dy.at(r, c).is_zero()) D.set(r, c, dy.at(r, c));
    }
    if (yr && xpart[n].rank()) {
      HomogMatrix w = component_or_zero(phi, n);
      for (std::size_t r = 0; r < yr; ++r)
        for (std::size_t c = 0; c < w.ncols(); ++c)
          if (!w.at(r, c).is_zero()) D.set(r, yc + c, w.at(r, c));
    }
    if (xpart[n - 1].rank() && xpart[n].rank()) {
      const auto& dx = X.diff(n);
      for (std::size_t r = 0; r < dx.nrows(); ++r)
        for (std::size_t c = 0; c < dx.ncols(); ++c)
          if (!dx.at(r, c).is_zero()) D.set(yr + r, yc + c, -dx.at(r, c));
    }
    diffs.emplace(n, std::move(D));
  }
  bool closed_below = X.closed_below() && lo - 1 < X.lo() && Y.closed_below() && lo + k < Y.lo();
  bool closed_above = X.closed_above() && hi + 1 > X.hi() && Y.closed_above() && hi + 2 + k > Y.hi();
  out.complex = GradedComplex(X.ring(), lo, hi, std::move(mods), std::move(diffs), closed_below, closed_above);
  return out;
}

}  // namespace resolvent
