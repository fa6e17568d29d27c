#include "ringmod/spec_parse.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace ringmod {

namespace {

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "kind:rest" -> (kind, rest); rest empty when there is no colon.
std::pair<std::string, std::string> head(const std::string& text) {
  const std::string t = trim(text);
  const size_t colon = t.find(':');
  if (colon == std::string::npos) return {t, ""};
  return {trim(t.substr(0, colon)), t.substr(colon + 1)};
}

using KeyValues = std::map<std::string, std::vector<double>>;

void allow_only(const KeyValues& kv, const std::vector<std::string>& keys,
                const std::string& what) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const std::string& allowed : keys) ok = ok || k == allowed;
    if (!ok) throw std::invalid_argument(what + ": unknown key '" + k + "'");
  }
}

const std::vector<double>& need(const KeyValues& kv, const std::string& key,
                                const std::string& what) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument(what + ": missing key '" + key + "'");
  return it->second;
}

double scalar(const KeyValues& kv, const std::string& key, const std::string& what) {
  const std::vector<double>& v = need(kv, key, what);
  if (v.size() != 1) throw std::invalid_argument(what + ": key '" + key + "' takes one value");
  return v[0];
}

int dimension(const KeyValues& kv, const std::string& what) {
  const double n = scalar(kv, "n", what);
  if (n != std::floor(n) || n < 2 || n > 64) {
    throw std::invalid_argument(what + ": n must be an integer >= 2");
  }
  return static_cast<int>(n);
}

Vector vector_of(const std::vector<double>& v, int n, const std::string& what) {
  if (static_cast<int>(v.size()) != n) {
    throw std::invalid_argument(what + ": vector must have n entries");
  }
  Vector out(n);
  for (int i = 0; i < n; ++i) out(i) = v[i];
  return out;
}

MapSpec parse_single_map(const std::string& text) {
  std::string body = trim(text);
  bool fd = false;
  double step = 0.0;
  const size_t at = body.find('@');
  if (at != std::string::npos) {
    const std::string suffix = trim(body.substr(at + 1));
    body = trim(body.substr(0, at));
    if (suffix == "fd") {
      fd = true;
    } else if (suffix.rfind("fd=", 0) == 0) {
      fd = true;
      step = parse_number(suffix.substr(3));
      if (!(step > 0.0)) throw std::invalid_argument("map: finite-difference step must be > 0");
    } else {
      throw std::invalid_argument("map: unknown suffix '@" + suffix + "'");
    }
  }
  const auto [kind, rest] = head(body);
  MapSpec map = MapSpec::Identity();
  if (kind == "identity") {
    if (!trim(rest).empty()) throw std::invalid_argument("map: identity takes no arguments");
  } else if (kind == "twist") {
    if (!trim(rest).empty()) throw std::invalid_argument("map: twist takes no arguments");
    map = MapSpec::RotationTwist();
  } else if (kind == "radial") {
    const KeyValues kv = parse_keyvalues(rest);
    allow_only(kv, {"a"}, "radial");
    map = MapSpec::RadialStretch(scalar(kv, "a", "radial"));
  } else if (kind == "linear") {
    std::vector<double> values;
    for (const std::string& tok : split(rest, ',')) values.push_back(parse_number(tok));
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
    if (n < 2 || n * n != static_cast<int>(values.size())) {
      throw std::invalid_argument("map: linear needs n*n entries with n >= 2");
    }
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = values[i * n + j];
    }
    map = MapSpec::Linear(a);
  } else {
    throw std::invalid_argument("map: unknown kind '" + kind + "'");
  }
  return fd ? map.with_finite_differences(step) : map;
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t == "e") return std::numbers::e;
  if (t == "pi") return std::numbers::pi;
  if (t.empty()) throw std::invalid_argument("expected a number, got an empty string");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a number, got '" + t + "'");
  }
  return v;
}

KeyValues parse_keyvalues(const std::string& text) {
  KeyValues out;
  if (trim(text).empty()) return out;
  std::string current;
  for (const std::string& raw : split(text, ',')) {
    const std::string tok = trim(raw);
    const size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      if (current.empty()) throw std::invalid_argument("value '" + tok + "' has no key");
      out[current].push_back(parse_number(tok));
      continue;
    }
    current = trim(tok.substr(0, eq));
    if (current.empty()) throw std::invalid_argument("empty key in '" + text + "'");
    if (out.count(current)) throw std::invalid_argument("repeated key '" + current + "'");
    out[current].push_back(parse_number(tok.substr(eq + 1)));
  }
  return out;
}

MapSpec parse_map(const std::string& text) {
  const auto [kind, rest] = head(text);
  if (kind != "compose") return parse_single_map(text);
  std::vector<MapSpec> stages;
  for (const std::string& part : split(rest, ';')) {
    if (trim(part).empty()) throw std::invalid_argument("map: empty composition stage");
    stages.push_back(parse_map(part));
  }
  return MapSpec::Compose(std::move(stages));
}

Shape parse_shape(const std::string& text) {
  const auto [kind, rest] = head(text);
  const KeyValues kv = parse_keyvalues(rest);
  if (kind == "annulus") {
    allow_only(kv, {"n", "r0", "r1", "c"}, "annulus");
    const int n = dimension(kv, "annulus");
    const Vector c = kv.count("c") ? vector_of(kv.at("c"), n, "annulus") : Vector::Zero(n);
    return Shape::Annulus(scalar(kv, "r0", "annulus"), scalar(kv, "r1", "annulus"), c);
  }
  if (kind == "semiring") {
    allow_only(kv, {"n", "r", "R", "x0"}, "semiring");
    const int n = dimension(kv, "semiring");
    const Vector x0 = kv.count("x0") ? vector_of(kv.at("x0"), n, "semiring") : Vector::Zero(n);
    return Shape::HalfSemiring(scalar(kv, "r", "semiring"), scalar(kv, "R", "semiring"), x0);
  }
  if (kind == "apollonian") {
    allow_only(kv, {"n", "r0", "r1", "xi"}, "apollonian");
    const int n = dimension(kv, "apollonian");
    return Shape::Apollonian(scalar(kv, "r0", "apollonian"), scalar(kv, "r1", "apollonian"),
                             vector_of(need(kv, "xi", "apollonian"), n, "apollonian"));
  }
  throw std::invalid_argument("shape: unknown kind '" + kind + "'");
}

DominatingFactor parse_factor(const std::string& text) {
  const auto [kind, rest] = head(text);
  const KeyValues kv = parse_keyvalues(rest);
  if (kind == "linear") {
    allow_only(kv, {"gamma"}, "linear");
    return DominatingFactor::Linear(scalar(kv, "gamma", "linear"));
  }
  if (kind == "power") {
    allow_only(kv, {"c", "alpha", "t0"}, "power");
    return DominatingFactor::Power(scalar(kv, "c", "power"), scalar(kv, "alpha", "power"),
                                   kv.count("t0") ? scalar(kv, "t0", "power") : 0.0);
  }
  if (kind == "tabulated") {
    allow_only(kv, {"t", "h"}, "tabulated");
    return DominatingFactor::Tabulated(need(kv, "t", "tabulated"), need(kv, "h", "tabulated"));
  }
  throw std::invalid_argument("factor: unknown kind '" + kind + "'");
}

GridResolution parse_grid(const std::string& text) {
  std::string t = trim(text);
  GridResolution res;
  const size_t slash = t.find('/');
  if (slash != std::string::npos) {
    const std::string s = trim(t.substr(slash + 1));
    if (s.empty() || s[0] != 's') throw std::invalid_argument("grid: expected /s<stencil>");
    const double k = parse_number(s.substr(1));
    if (k != std::floor(k) || k < 1) throw std::invalid_argument("grid: bad stencil");
    res.stencil = static_cast<int>(k);
    t = t.substr(0, slash);
  }
  const size_t x = t.find('x');
  if (x == std::string::npos) throw std::invalid_argument("grid: expected <R>x<A>");
  const double r = parse_number(t.substr(0, x));
  const double a = parse_number(t.substr(x + 1));
  if (r != std::floor(r) || a != std::floor(a) || r < 1 || a < 1) {
    throw std::invalid_argument("grid: counts must be positive integers");
  }
  res.radial = static_cast<int>(r);
  res.angular = static_cast<int>(a);
  return res;
}

}  // namespace ringmod
