#include "thompson/replicability.hpp"

#include "thompson/chartable.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thompson {

std::size_t BivariateSeries::idx(int m, int n) const {
  if (m < 1 || n < 1 || m > M_ || n > M_) throw std::out_of_range("H index outside the computed range");
  return static_cast<std::size_t>((m - 1) * M_ + (n - 1));
}

bool BivariateSeries::symmetric() const {
  for (int m = 1; m <= M_; ++m) {
    for (int n = m + 1; n <= M_; ++n) {
      if (at(m, n) != at(n, m)) return false;
    }
  }
  return true;
}

namespace {

using Grid = std::vector<std::vector<Int>>;  // [i][j] ~ q1^i q2^j, 0 <= i, j <= M

Grid multiply(const Grid& a, const Grid& b, int M) {
  Grid c(static_cast<std::size_t>(M + 1), std::vector<Int>(static_cast<std::size_t>(M + 1), Int(0)));
  for (int i1 = 0; i1 <= M; ++i1) {
    for (int j1 = 0; j1 <= M; ++j1) {
      const Int& x = a[i1][j1];
      if (x == 0) continue;
      for (int i2 = 0; i1 + i2 <= M; ++i2) {
        for (int j2 = 0; j1 + j2 <= M; ++j2) {
          if (b[i2][j2] != 0) c[i1 + i2][j1 + j2] += x * b[i2][j2];
        }
      }
    }
  }
  return c;
}

}  // namespace

BivariateSeries h_table(const QSeries& f, int M) {
  if (M < 1) throw std::invalid_argument("H-table cutoff must be positive");
  if (f.denom() != 1) throw std::invalid_argument("H-table needs integer exponents");
  const auto v = f.valuation();
  if (!v || *v != -1 || f.coeff(-1) != 1) throw std::invalid_argument("H-table needs f = q^-1 + O(1)");
  if (f.trunc_order() && *f.trunc_order() < 2 * M) {
    throw std::invalid_argument("H-table to " + std::to_string(M) + " needs coefficients below q^" +
                                std::to_string(2 * M));
  }
  // f(t1) - f(t2) = (q1^-1 - q2^-1)(1 - u), u = q1 q2 sum_n a_n sum_{i+j=n-1} q1^i q2^j.
  Grid u(static_cast<std::size_t>(M + 1), std::vector<Int>(static_cast<std::size_t>(M + 1), Int(0)));
  for (int i = 1; i <= M; ++i) {
    for (int j = 1; j <= M; ++j) {
      const Rat a = f.coeff(i + j - 1);
      if (a.get_den() != 1) throw std::invalid_argument("H-table needs integer coefficients");
      u[i][j] = a.get_num();
    }
  }
  // -sum H q1^m q2^n = log(1 - u) = -sum_k u^k / k.
  BivariateSeries H(M);
  Grid p = u;
  for (int k = 1; k <= M; ++k) {
    for (int m = 1; m <= M; ++m) {
      for (int n = 1; n <= M; ++n) {
        if (p[m][n] != 0) H.at(m, n) += Rat(p[m][n]) / k;
      }
    }
    if (k < M) p = multiply(p, u, M);
  }
  return H;
}

ReplicabilityReport is_replicable(const BivariateSeries& H) {
  ReplicabilityReport rep;
  const int M = H.cutoff();
  for (int prod = 1; prod <= M; ++prod) {
    std::vector<std::pair<int, int>> firsts;  // (gcd, a) of the first pair seen per gcd
    for (int a = 1; a <= prod; ++a) {
      if (prod % a != 0) continue;
      const int b = prod / a;
      const int g = std::gcd(a, b);
      auto it = std::find_if(firsts.begin(), firsts.end(), [&](const auto& x) { return x.first == g; });
      if (it == firsts.end()) {
        firsts.emplace_back(g, a);
        continue;
      }
      const int c = it->second, d = prod / c;
      ++rep.compared;
      if (H.at(a, b) != H.at(c, d)) rep.violations.push_back({a, b, c, d});
    }
  }
  return rep;
}

std::pair<QSeries, QSeries> split_series(const QSeries& F) {
  if (F.denom() != 1) throw std::invalid_argument("split needs integer exponents");
  std::map<i64, Rat> even, odd;
  for (const auto& [k, c] : F.raw()) {
    const i64 r = ((k % 4) + 4) % 4;
    if (r == 0) {
      even[k] = c;
    } else if (r == 1 || k == -3) {
      odd[k] = c;
    } else {
      throw std::invalid_argument("exponent " + std::to_string(k) + " is outside the plus space");
    }
  }
  return {QSeries::from_raw(1, std::move(even), F.trunc_order()), QSeries::from_raw(1, std::move(odd), F.trunc_order())};
}

QSeries theta_half(const Rat& order) {
  std::map<i64, Rat> terms;
  for (i64 k = 1; Rat(k * k, 4) < order; k += 2) terms[k * k] = 2;
  return QSeries::from_raw(4, std::move(terms), order);
}

QSeries t_series(const QSeries& F, int j) {
  if (j != 0 && j != 1) throw std::invalid_argument("t-series component must be 0 or 1");
  if (F.is_exact()) throw std::invalid_argument("t-series needs a truncated series");
  const auto parts = split_series(F);
  const QSeries quarter = substitute_quarter(j == 0 ? parts.first : parts.second);
  const Rat order = *quarter.trunc_order() + 1;
  const QSeries theta = j == 0 ? theta_series(1, order) : theta_half(order);
  QSeries t = quarter * invert(theta);
  if (t.denom() != 1) throw std::domain_error("t-series has non-integral exponents: " + t.to_string());
  return t;
}

std::vector<ReplIdentity> load_identities(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ReplIdentity> out;
  std::string line;
  std::size_t lineno = 0;
  auto parse_poly = [](const std::string& text) {
    XPoly p;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("expected coefficient:power, got " + tok);
      p.emplace_back(parse_rat(tok.substr(0, colon)), std::stoll(tok.substr(colon + 1)));
    }
    return p;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    ReplIdentity id;
    id.source = path.substr(path.find_last_of('/') + 1) + ":" + std::to_string(lineno);
    try {
      std::vector<std::string> parts;
      std::stringstream ss(line);
      std::string part;
      while (std::getline(ss, part, '|')) parts.push_back(part);
      if (parts.size() < 2) throw std::invalid_argument("expected 'label component generator | num | den'");
      std::istringstream head(parts[0]);
      head >> id.label >> id.component >> id.generator;
      if (id.component != "t0" && id.component != "t1" && id.component != "t") {
        throw std::invalid_argument("unknown component " + id.component);
      }
      if (id.generator == "sum" && id.component != "t") throw std::invalid_argument("'sum' only applies to t rows");
      if (id.generator != "sum" && id.generator != "0") EtaQuotient::parse(id.generator);
      id.numerator = parse_poly(parts[1]);
      if (parts.size() > 2) id.denominator = parse_poly(parts[2]);
    } catch (const std::exception& e) {
      throw std::runtime_error(id.source + ": " + e.what());
    }
    out.push_back(std::move(id));
  }
  return out;
}

std::vector<ReplIdentity> shipped_identities() { return load_identities(data_dir() + "/replicability.txt"); }

namespace {

QSeries eval_poly(const XPoly& p, const QSeries& x, const QSeries& xinv) {
  QSeries s = QSeries::zero();
  bool first = true;
  for (const auto& [c, k] : p) {
    QSeries term = k >= 0 ? pow(x, k) : pow(xinv, -k);
    term *= c;
    if (first) {
      s = term;
      first = false;
    } else {
      s += term;
    }
  }
  return s;
}

i64 max_power(const XPoly& p) {
  i64 m = 0;
  for (const auto& t : p) m = std::max<i64>(m, t.second < 0 ? -t.second : t.second);
  return m;
}

}  // namespace

QSeries evaluate_identity(const ReplIdentity& id, i64 order) {
  if (id.generator == "sum") throw std::invalid_argument("a 'sum' row has no closed form");
  if (id.generator == "0") {
    Rat c = 0;
    for (const auto& [a, k] : id.numerator) {
      if (k != 0) throw std::invalid_argument(id.source + ": constant row with a power of x");
      c += a;
    }
    if (!id.denominator.empty()) throw std::invalid_argument(id.source + ": constant row with a denominator");
    return c == 0 ? QSeries::zero() : QSeries::monomial(c, Rat(0));
  }
  const EtaQuotient eq = EtaQuotient::parse(id.generator);
  const i64 spread = 2 * std::max(max_power(id.numerator), max_power(id.denominator)) + 4;
  for (i64 extra = spread;; extra *= 2) {
    const QSeries x = eta_expansion(eq, Rat(order + 1 + extra));
    const QSeries xinv = invert(x);
    QSeries r = eval_poly(id.numerator, x, xinv);
    if (!id.denominator.empty()) {
      const QSeries d = eval_poly(id.denominator, x, xinv);
      const auto v = d.valuation();
      if (!v) throw std::domain_error(id.source + ": denominator vanishes");
      r *= invert(d);
    }
    if (!r.trunc_order() || *r.trunc_order() > order) return r.truncated(Rat(order + 1));
    if (extra > 64 * spread) throw std::runtime_error(id.source + ": could not reach the requested order");
  }
}

IdentityCheck verify_identity(const ReplIdentity& id, const QSeries& F, i64 order,
                              const std::vector<ReplIdentity>& components) {
  IdentityCheck out;
  out.id = id;
  QSeries t;
  if (id.component == "t0") {
    t = t_series(F, 0);
  } else if (id.component == "t1") {
    t = t_series(F, 1);
  } else {
    t = t_series(F, 0) + t_series(F, 1);
  }
  QSeries rhs;
  if (id.generator == "sum") {
    const ReplIdentity *c0 = nullptr, *c1 = nullptr;
    for (const auto& c : components) {
      if (c.label != id.label) continue;
      if (c.component == "t0") c0 = &c;
      if (c.component == "t1") c1 = &c;
    }
    if (!c0 || !c1) throw std::invalid_argument(id.source + ": 'sum' row needs both component identities");
    rhs = evaluate_identity(*c0, order) + evaluate_identity(*c1, order);
  } else {
    rhs = evaluate_identity(id, order);
  }
  i64 limit = order;
  if (t.trunc_order()) limit = std::min<i64>(limit, -floor_of(-*t.trunc_order()).get_si() - 1);
  if (rhs.trunc_order()) limit = std::min<i64>(limit, -floor_of(-*rhs.trunc_order()).get_si() - 1);
  i64 lo = 0;
  for (const QSeries* s : {&t, &rhs}) {
    if (auto v = s->valuation()) lo = std::min<i64>(lo, floor_of(*v).get_si());
  }
  for (i64 n = lo; n <= limit; ++n) {
    const Rat a = t.coeff(n), b = rhs.coeff(n);
    if (a != b) {
      out.first_mismatch = n;
      out.expected = to_string(b);
      out.got = to_string(a);
      break;
    }
  }
  out.checked_to = limit;
  out.ok = !out.first_mismatch && limit >= order;
  return out;
}

}  // namespace thompson
