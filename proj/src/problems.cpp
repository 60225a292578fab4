#include "qhb/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace qhb {

namespace {

Interval dec(const std::string& lo, const std::string& hi) { return {parse_down(lo), parse_up(hi)}; }

Interval parse_real(const std::string& s) {
  double lo = 0, hi = 0;
  try {
    lo = parse_down(s);
    hi = parse_up(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("non-finite constant: '" + s + "'");
  return {lo, hi};
}

}  // namespace

Interval parse_interval(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return parse_real(text);
  Interval a = parse_real(text.substr(0, comma));
  Interval b = parse_real(text.substr(comma + 1));
  if (a.lo() > b.hi()) throw std::invalid_argument("interval with lo > hi: '" + text + "'");
  return {a.lo(), b.hi()};
}

ProblemSpec make_kk_simple() {
  QHType t = make_type({1, 2}, 1);
  Poly u = Poly::var(2, 0), v = Poly::var(2, 1);
  std::vector<Poly> f{u * u - v, Interval::ratio(1, 3) * pow(u, 3)};
  ProblemSpec p{"kk-simple", {}, VectorFieldModel(t, std::move(f)), std::vector<double>{-0.1, 0.0001}, {}, "para", {}};
  p.reference.push_back({"para", std::vector<double>{-0.1, 0.0001}, {}, 5.6700023252180213e-5, 343.57935744230372,
                         dec("84.083706663650346", "84.083853417007874")});
  p.reference.push_back({"para", std::vector<double>{-0.1, -0.1}, {}, {}, {},
                         dec("6.2010761835235443", "6.2012442938861261")});
  return p;
}

KKConstants kk_default_constants() {
  KKConstants k;
  k.u_L = parse_real("1.46777062491");
  k.v_L = parse_real("0.238709208571");
  k.u_R = Interval(0.0);
  k.v_R = Interval(0.0);
  k.s = dec("0.44819467507505461", "0.44819467507505512");
  k.c1 = dec("1.2577944204614435", "1.2577944204614451");
  k.c2 = dec("-0.52072797534176075", "-0.52072797534175985");
  return k;
}

ProblemSpec make_kk(const KKConstants& k) {
  for (const Interval* c : {&k.u_L, &k.v_L, &k.u_R, &k.v_R, &k.s, &k.c1, &k.c2})
    if (!c->is_finite()) throw std::invalid_argument("make_kk: non-finite constant");
  QHType t = make_type({1, 2}, 1);
  Poly u = Poly::var(2, 0), v = Poly::var(2, 1);
  Poly one = Poly::constant(2, Interval(1.0));
  std::vector<Poly> f{u * u - v - k.s * u - k.c1 * one,
                      Interval::ratio(1, 3) * pow(u, 3) - u - k.s * v - k.c2 * one};
  ProblemSpec p{"kk", {}, VectorFieldModel(t, std::move(f)), std::vector<double>{-0.1, -0.8}, {}, "para", {}};
  p.params = {{"s", decimal_down(k.s.lo()) + "," + decimal_up(k.s.hi())},
              {"c1", decimal_down(k.c1.lo()) + "," + decimal_up(k.c1.hi())},
              {"c2", decimal_down(k.c2.lo()) + "," + decimal_up(k.c2.hi())}};
  p.reference.push_back({"para", std::vector<double>{-0.1, -0.8}, {}, {}, {},
                         dec("0.944239514010626", "0.94469739415956034")});
  return p;
}

ProblemSpec make_fvks(int d, int N, double L_domain, double amplitude) {
  if (d < 1) throw std::invalid_argument("make_fvks: d must be at least 1");
  if (N < 2) throw std::invalid_argument("make_fvks: N must be at least 2");
  if (!(L_domain > 0) || !std::isfinite(L_domain)) throw std::invalid_argument("make_fvks: domain length must be positive");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("make_fvks: amplitude must be finite");
  const std::size_t n = 2 * static_cast<std::size_t>(N);
  std::vector<int> alpha(n, 1);
  for (int i = 0; i < N; ++i) alpha[static_cast<std::size_t>(i)] = 2;
  QHType t = make_type(alpha, 1);

  const Interval L(L_domain);
  const Interval h = L / Interval(static_cast<double>(N));
  // Cell centers r_i = (i - 1/2) h and faces r_{i+1/2} = i h, for i = 1..N.
  auto center = [&](int i) { return Interval::ratio(2 * i - 1, 2) * h; };
  auto face = [&](int i) { return Interval(static_cast<double>(i)) * h; };
  const unsigned dm1 = static_cast<unsigned>(d - 1);

  auto u = [&](int i) { return Poly::var(n, static_cast<std::size_t>(i - 1)); };
  auto v = [&](int i) { return Poly::var(n, static_cast<std::size_t>(N + i - 1)); };
  std::vector<Poly> f(n, Poly(n));
  for (int i = 1; i <= N; ++i) {
    Interval a = Interval(1.0) / (pow_int(center(i), dm1) * sqr(h));
    Poly du(n), dv(n);
    if (i < N) {
      Interval fr = a * pow_int(face(i), dm1);
      du += fr * (u(i + 1) - u(i)) - fr * ((v(i + 1) - v(i)) * u(i));
      dv += fr * (v(i + 1) - v(i));
    }
    if (i > 1) {
      Interval fl = a * pow_int(face(i - 1), dm1);
      du += -(fl * (u(i) - u(i - 1))) + fl * ((v(i) - v(i - 1)) * u(i - 1));
      dv += -(fl * (v(i) - v(i - 1)));
    }
    dv += u(i) - v(i);
    f[static_cast<std::size_t>(i - 1)] = du;
    f[static_cast<std::size_t>(N + i - 1)] = dv;
  }

  IntervalVector y0(n);
  for (int i = 1; i <= N; ++i)
    y0[static_cast<std::size_t>(i - 1)] = Interval(amplitude) * (Interval(1.0) + cos(Interval::pi() * center(i)));

  ProblemSpec p{"fvks", {}, VectorFieldModel(t, std::move(f)), {}, y0, "dir:1:+", {}};
  p.params = {{"d", std::to_string(d)}, {"N", std::to_string(N)}};
  if (L_domain == 1.0 && amplitude == 100.0) {
    struct Row {
      int d, N;
      const char *chart, *lo, *hi;
    };
    static const Row rows[] = {
        {4, 4, "dir:1:+", "0.041634995298971515", "0.041635093439395401"},
        {3, 4, "dir:1:+", "0.04401634379731982", "0.044016564692126309"},
        {2, 4, "dir:1:+", "0.052637126736797233", "0.052639096803538601"},
        {3, 11, "dir:1:+", "0.040731730763463577", "0.040731730868847683"},
        {4, 4, "para", "0.041635002136609429", "0.041635154750508511"},
    };
    for (const Row& r : rows)
      if (r.d == d && r.N == N) p.reference.push_back({r.chart, {}, {}, {}, {}, dec(r.lo, r.hi)});
  }
  return p;
}

std::vector<ProblemInfo> list_problems() {
  return {
      {"fvks", "d (integer >= 1), N (integer >= 2), L (real, default 1), amplitude (real, default 100)",
       "finite-volume radial Keller-Segel system, 2N equations, type (2,...,2,1,...,1), k = 1"},
      {"kk", "s, c1, c2 (intervals 'lo,hi'; defaults ship validated constants)",
       "u' = u^2 - v - s u - c1, v' = u^3/3 - u - s v - c2, type (1,2), k = 1"},
      {"kk-simple", "none", "u' = u^2 - v, v' = u^3/3, type (1,2), k = 1"},
  };
}

ProblemSpec make_problem(const std::string& id, const std::map<std::string, std::string>& params) {
  auto get = [&params](const std::string& key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  auto get_int = [&](const std::string& key, int def) {
    auto s = get(key);
    if (!s) return def;
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(*s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key + " must be an integer");
    }
    if (pos != s->size()) throw std::invalid_argument("parameter " + key + " must be an integer");
    return v;
  };
  auto get_real = [&](const std::string& key, double def) {
    auto s = get(key);
    if (!s) return def;
    return parse_real(*s).mid();
  };
  if (id == "kk-simple") return make_kk_simple();
  if (id == "kk") {
    KKConstants k = kk_default_constants();
    if (auto s = get("s")) k.s = parse_interval(*s);
    if (auto s = get("c1")) k.c1 = parse_interval(*s);
    if (auto s = get("c2")) k.c2 = parse_interval(*s);
    return make_kk(k);
  }
  if (id == "fvks") {
    if (!get("d") || !get("N")) throw std::invalid_argument("fvks requires parameters d and N");
    return make_fvks(get_int("d", 0), get_int("N", 0), get_real("L", 1.0), get_real("amplitude", 100.0));
  }
  throw std::invalid_argument("unknown problem '" + id + "'");
}

}  // namespace qhb
