#include "resolvent/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "resolvent/errors.hpp"

namespace resolvent {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::shared_ptr<const PolyCtx> PolyCtx::make(std::int64_t prime, std::vector<std::string> variables) {
  if (prime <= 2 || prime >= (std::int64_t(1) << 31) || !is_prime(prime))
    throw ValidationError("BadPrime", "modulus " + std::to_string(prime) +
                                          " is not an odd prime below 2^31");
  if (variables.empty()) throw ValidationError("BadVariables", "no variables declared");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
    for (char ch : v) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ok) throw ValidationError("BadVariables", "invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw ValidationError("BadVariables", "duplicate variable '" + v + "'");
  }
  return std::shared_ptr<const PolyCtx>(new PolyCtx(static_cast<Coeff>(prime), std::move(variables)));
}

std::optional<std::size_t> PolyCtx::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

Coeff PolyCtx::inv(Coeff a) const {
  if (a == 0) throw Error("inverse of zero in F_" + std::to_string(p_));
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Coeff>(result);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint16_t> exps) : exp_(std::move(exps)) {
  for (auto e : exp_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars);
  m.exp_[i] = 1;
  m.degree_ = 1;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] = static_cast<std::uint16_t>(r.exp_[i] + o.exp_[i]);
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] > o.exp_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r(o);
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] = static_cast<std::uint16_t>(r.exp_[i] - exp_[i]);
  r.degree_ = o.degree_ - degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<std::uint16_t> e(exp_.size());
  for (std::size_t i = 0; i < exp_.size(); ++i) e[i] = std::max(exp_[i], o.exp_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exp_.size(); ++i)
    if (exp_[i] && o.exp_[i]) return false;
  return true;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

namespace {
void enumerate(std::size_t nvars, std::size_t pos, int remaining, std::vector<std::uint16_t>& cur,
               std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = static_cast<std::uint16_t>(remaining);
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = static_cast<std::uint16_t>(e);
    enumerate(nvars, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}
}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0 || nvars == 0) return out;
  std::vector<std::uint16_t> cur(nvars, 0);
  enumerate(nvars, 0, d, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

// -------------------------------------------------------------------- Poly

Poly Poly::constant(PolyCtxPtr ctx, std::int64_t c) {
  Coeff v = ctx->reduce(c);
  Poly p(ctx);
  if (v) p.terms_.push_back({Monomial(ctx->nvars()), v});
  return p;
}

Poly Poly::monomial(PolyCtxPtr ctx, Monomial m, Coeff c) {
  Poly p(std::move(ctx));
  if (c % p.ctx_->prime()) p.terms_.push_back({std::move(m), c % p.ctx_->prime()});
  return p;
}

Poly Poly::variable(PolyCtxPtr ctx, std::size_t i) {
  auto n = ctx->nvars();
  return monomial(std::move(ctx), Monomial::variable(n, i), 1);
}

Poly Poly::from_terms(PolyCtxPtr ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; });
  Poly p(std::move(ctx));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = p.ctx_->add(p.terms_.back().coeff, t.coeff % p.ctx_->prime());
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff % p.ctx_->prime()) {
      p.terms_.push_back({std::move(t.mono), t.coeff % p.ctx_->prime()});
    }
  }
  return p;
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().mono.degree();
  for (const auto& t : terms_)
    if (t.mono.degree() != d) return std::nullopt;
  return d;
}

Coeff Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

Coeff Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return 0;
}

void Poly::require_same_ctx(const Poly& o) const {
  if (ctx_ != o.ctx_) {
    // Default-constructed polys carry no context and behave as zero.
    if (!ctx_ || !o.ctx_) return;
    throw ContextError("polynomials belong to different rings");
  }
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ctx(o);
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Poly r(ctx_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grevlex_cmp(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coeff s = ctx_->add(terms_[i].coeff, o.terms_[j].coeff);
      if (s) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = ctx_->neg(t.coeff);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(Coeff c) const {
  if (!ctx_) return *this;
  c %= ctx_->prime();
  if (c == 0) return Poly(ctx_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = ctx_->mul(t.coeff, c);
  return r;
}

Poly Poly::times(const Monomial& m, Coeff c) const {
  if (!ctx_) return *this;
  c %= ctx_->prime();
  if (c == 0) return Poly(ctx_);
  Poly r(ctx_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, ctx_->mul(t.coeff, c)});
  return r;
}

Poly Poly::minus_multiple(const Poly& other, const Monomial& m, Coeff c) const {
  return *this - other.times(m, c);
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ctx(o);
  if (is_zero() || o.is_zero()) return Poly(ctx_ ? ctx_ : o.ctx_);
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) all.push_back({a.mono * b.mono, ctx_->mul(a.coeff, b.coeff)});
  return from_terms(ctx_, std::move(all));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(ctx_->inv(leading().coeff));
}

bool Poly::operator==(const Poly& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
  return true;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::int64_t c = ctx_->lift(t.coeff);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::int64_t a = c < 0 ? -c : c;
    bool wrote = false;
    if (a != 1 || t.mono.is_one()) {
      os << a;
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (wrote) os << "*";
      os << ctx_->variables()[i];
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

// ------------------------------------------------------------------ parser

namespace {

class PolyParser {
 public:
  PolyParser(const PolyCtxPtr& ctx, std::string_view s) : ctx_(ctx), s_(s) {}

  Poly parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    Poly result(ctx_);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError(std::string("expected '+' or '-' but found '") + s_[pos_] + "'", pos_);
      }
      result += parse_term().scaled(std::int64_t(sign));
      first = false;
    }
    return result;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::int64_t parse_int() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = (v * 10 + (s_[pos_] - '0')) % (std::int64_t(1) << 40);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", pos_);
    return v;
  }

  // One factor: integer or variable[^int].
  bool parse_factor(Coeff& coeff, Monomial& mono) {
    skip_ws();
    if (pos_ == s_.size()) return false;
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      coeff = ctx_->mul(coeff, ctx_->reduce(parse_int()));
      return true;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      // Longest declared variable name that is a prefix here.
      std::size_t best = 0, best_len = 0;
      bool found = false;
      const auto& vars = ctx_->variables();
      for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        if (v.size() > best_len && s_.substr(pos_, v.size()) == v) {
          best = i;
          best_len = v.size();
          found = true;
        }
      }
      if (!found) {
        std::size_t end = pos_;
        while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
        throw ParseError("unknown variable '" + std::string(s_.substr(pos_, end - pos_)) + "'", pos_);
      }
      pos_ += best_len;
      skip_ws();
      std::int64_t e = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip_ws();
        e = parse_int();
        if (e > 60000) throw ParseError("exponent too large", pos_);
      }
      auto exps = mono.exponents();
      exps[best] = static_cast<std::uint16_t>(exps[best] + e);
      mono = Monomial(std::move(exps));
      return true;
    }
    return false;
  }

  Poly parse_term() {
    Coeff coeff = 1;
    Monomial mono(ctx_->nvars());
    std::size_t start = pos_;
    if (!parse_factor(coeff, mono)) throw ParseError("expected coefficient or variable", start);
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] == '*') {
        ++pos_;
        if (!parse_factor(coeff, mono)) throw ParseError("expected factor after '*'", pos_);
        continue;
      }
      if (s_[pos_] == '+' || s_[pos_] == '-') break;
      std::size_t here = pos_;
      if (!parse_factor(coeff, mono)) throw ParseError(std::string("unexpected character '") + s_[here] + "'", here);
    }
    return Poly::monomial(ctx_, std::move(mono), coeff);
  }

  const PolyCtxPtr& ctx_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const PolyCtxPtr& ctx, std::string_view text) { return PolyParser(ctx, text).parse(); }

}  // namespace resolvent
