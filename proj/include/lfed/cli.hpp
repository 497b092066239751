#pragma once

// Session configuration, endomorphism text syntax, and the report-producing
// commands behind the lfed tool.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lfed/lfed.hpp"

namespace lfed::cli {

using nlohmann::json;

/// Bad flags, config text or command arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct SessionConfig {
  std::optional<int> field;  // conductor; commands pick a default when unset
  std::int64_t D = 8;
  std::int64_t margin = 6;
  std::int64_t maxDim = 50;
  std::int64_t maxIter = 100;
  std::int64_t N = 12;
  std::int64_t mLo = 1;
  std::int64_t mHi = 12;
  std::int64_t genDeg = 3;
  std::int64_t seed = 7;
  std::int64_t trials = 100;
  std::int64_t samples = 50;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::string> p;
  std::optional<std::string> modulus;
  std::optional<std::string> endo;
  std::optional<std::string> f;
  std::optional<std::string> output;
  bool timing = false;

  Field fieldOr(int fallback) const { return Field(field.value_or(fallback)); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Strip one pair of surrounding quotes; inside them \" and \\ are escapes.
inline std::string unquote(const std::string& v) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') return v;
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '\\' && i + 2 < v.size()) {
      out += v[++i];
      continue;
    }
    if (v[i] == '"') return v;  // not a single quoted string
    out += v[i];
  }
  return out;
}

inline std::int64_t toInt(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw UsageError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

inline bool toBool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw UsageError("config: '" + key + "' expects true or false, got '" + v + "'");
}

// Split at commas outside quotes, braces and parentheses.
inline std::vector<std::string> splitTopLevel(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

}  // namespace detail

/// Set one key; shared by the config file reader and the flag layer.
inline void setKey(SessionConfig& cfg, const std::string& key, const std::string& rawValue) {
  const std::string v = detail::unquote(detail::trim(rawValue));
  using detail::toInt;
  if (key == "field") {
    const auto n = toInt(key, v);
    if (n < 1) throw UsageError("config: field conductor must be >= 1");
    cfg.field = static_cast<int>(n);
  } else if (key == "D") cfg.D = toInt(key, v);
  else if (key == "margin") cfg.margin = toInt(key, v);
  else if (key == "max_dim") cfg.maxDim = toInt(key, v);
  else if (key == "max_iter") cfg.maxIter = toInt(key, v);
  else if (key == "N") cfg.N = toInt(key, v);
  else if (key == "m_lo") cfg.mLo = toInt(key, v);
  else if (key == "m_hi") cfg.mHi = toInt(key, v);
  else if (key == "gen_deg") cfg.genDeg = toInt(key, v);
  else if (key == "seed") cfg.seed = toInt(key, v);
  else if (key == "trials") cfg.trials = toInt(key, v);
  else if (key == "samples") cfg.samples = toInt(key, v);
  else if (key == "r") cfg.r = toInt(key, v);
  else if (key == "s") cfg.s = toInt(key, v);
  else if (key == "p") cfg.p = v;
  else if (key == "modulus") cfg.modulus = v;
  else if (key == "endo") cfg.endo = v;
  else if (key == "f") cfg.f = v;
  else if (key == "output") cfg.output = v;
  else if (key == "timing") cfg.timing = detail::toBool(key, v);
  else throw UsageError("config: unknown key '" + key + "'");
}

inline void validateConfig(const SessionConfig& cfg) {
  auto positive = [](const char* name, std::int64_t v) {
    if (v < 1) throw UsageError(std::string("config: '") + name + "' must be positive");
  };
  positive("D", cfg.D);
  positive("max_dim", cfg.maxDim);
  positive("max_iter", cfg.maxIter);
  positive("N", cfg.N);
  positive("m_lo", cfg.mLo);
  positive("trials", cfg.trials);
  positive("samples", cfg.samples);
  if (cfg.margin < 0) throw UsageError("config: 'margin' must be nonnegative");
  if (cfg.genDeg < 0) throw UsageError("config: 'gen_deg' must be nonnegative");
  if (cfg.mHi < cfg.mLo) throw UsageError("config: need m_lo <= m_hi");
}

/// `key = value` lines; `#` starts a comment outside quotes.
inline void applyConfigText(SessionConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (quoted && line[i] == '\\') {
        ++i;
        continue;
      }
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineNo) + ": expected 'key = value'");
    setKey(cfg, detail::trim(std::string_view(t).substr(0, eq)), t.substr(eq + 1));
  }
}

inline void applyConfigFile(SessionConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  applyConfigText(cfg, buf.str());
}

// ---------------------------------------------------------------------------
// Endomorphism text

/// `caseN { key = value, ... }` with integer or quoted values.
inline NormalForm parseNormalForm(std::string_view text, const Field& k) {
  static const std::regex shape(R"(^\s*case([1-7])\s*\{(.*)\}\s*$)");
  std::cmatch m;
  const std::string owned(text);
  if (!std::regex_match(owned.c_str(), m, shape))
    throw UsageError("normal form must look like 'caseN { key = value, ... }'");
  const int which = std::stoi(m[1].str());
  std::map<std::string, std::string> kv;
  const std::string body = detail::trim(m[2].str());
  if (!body.empty()) {
    for (const auto& item : detail::splitTopLevel(body)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("normal form field '" + item + "' lacks '='");
      kv[detail::trim(std::string_view(item).substr(0, eq))] = detail::unquote(detail::trim(item.substr(eq + 1)));
    }
  }
  std::vector<std::string> used;
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw UsageError("case " + std::to_string(which) + ": missing '" + key + "'");
    used.push_back(key);
    return it->second;
  };
  auto coeff = [&](const std::string& key) { return parseCoeff(take(key), k); };
  auto poly = [&](const std::string& key) { return parse(take(key), k); };
  auto integer = [&](const std::string& key) { return detail::toInt(key, take(key)); };

  NormalForm nf = Case5{};
  switch (which) {
    case 1: nf = Case1{coeff("a"), coeff("b")}; break;
    case 2: nf = Case2{coeff("b")}; break;
    case 3: nf = Case3{integer("s"), coeff("a"), coeff("b")}; break;
    case 4: nf = Case4{integer("r"), integer("s"), coeff("b"), poly("p")}; break;
    case 5: nf = Case5{}; break;
    case 6: nf = Case6{coeff("lambda"), poly("g")}; break;
    default: nf = Case7{coeff("lambda"), poly("g")}; break;
  }
  for (const auto& [key, v] : kv)
    if (std::find(used.begin(), used.end(), key) == used.end())
      throw UsageError("case " + std::to_string(which) + ": unknown field '" + key + "'");
  validate(nf);
  return nf;
}

/// `x -> expr, y -> expr`.
inline Endomorphism parseRawEndomorphism(std::string_view text, const Field& k) {
  std::optional<BiPoly> px, py;
  for (const auto& part : detail::splitTopLevel(text)) {
    const auto arrow = part.find("->");
    if (arrow == std::string::npos) throw UsageError("endomorphism images must read 'x -> ..., y -> ...'");
    const std::string var = detail::trim(std::string_view(part).substr(0, arrow));
    BiPoly image = parse(part.substr(arrow + 2), k);
    if (var == "x" && !px) px = std::move(image);
    else if (var == "y" && !py) py = std::move(image);
    else throw UsageError("endomorphism: unexpected or repeated variable '" + var + "'");
  }
  if (!px || !py) throw UsageError("endomorphism: both x and y images are required");
  return Endomorphism(*px, *py);
}

struct EndoSpec {
  Endomorphism phi;
  std::optional<NormalForm> nf;  // set when given in case syntax (never case 5)
};

inline EndoSpec parseEndo(std::string_view text, const Field& k) {
  const std::string t = detail::trim(text);
  if (t.rfind("case", 0) == 0) {
    NormalForm nf = parseNormalForm(t, k);
    if (std::holds_alternative<Case5>(nf))
      throw UsageError("case 5 has no normal-form images; give 'x -> ..., y -> ...' instead");
    return {buildNormalForm(nf), nf};
  }
  return {parseRawEndomorphism(t, k), std::nullopt};
}

// ---------------------------------------------------------------------------
// Reports

struct Report {
  std::string command;
  SessionConfig config;
  std::vector<Check> checks;
  json output = json::object();
  std::optional<double> elapsedMs;
};

inline json configJson(const SessionConfig& c) {
  json j;
  j["field"] = c.field ? json(*c.field) : json(nullptr);
  j["D"] = c.D;
  j["margin"] = c.margin;
  j["max_dim"] = c.maxDim;
  j["max_iter"] = c.maxIter;
  j["N"] = c.N;
  j["m_lo"] = c.mLo;
  j["m_hi"] = c.mHi;
  j["gen_deg"] = c.genDeg;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["samples"] = c.samples;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  j["r"] = opt(c.r);
  j["s"] = opt(c.s);
  j["p"] = opt(c.p);
  j["modulus"] = opt(c.modulus);
  j["endo"] = opt(c.endo);
  j["f"] = opt(c.f);
  j["output"] = opt(c.output);
  j["timing"] = c.timing;
  return j;
}

inline json toJson(const Report& r) {
  std::vector<Check> sorted = r.checks;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  json checks = json::array();
  for (const auto& c : sorted) {
    json e;
    e["id"] = c.id;
    e["status"] = toString(c.status);
    if (c.witness) e["witness"] = lfed::toString(*c.witness);
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  json j;
  j["schema"] = "lfed-report/1";
  j["command"] = r.command;
  j["config"] = configJson(r.config);
  j["checks"] = std::move(checks);
  j["output"] = r.output;
  j["elapsed_ms"] = r.elapsedMs ? json(*r.elapsedMs) : json(nullptr);
  return j;
}

/// 0 all pass, 1 any failure, 3 no failure but something inconclusive.
inline int exitCode(const Report& r) {
  bool inconclusive = false;
  for (const auto& c : r.checks) {
    if (c.status == Status::Fail) return 1;
    if (c.status == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

namespace detail {

inline Check makeCheck(std::string id, bool ok, std::string detail, std::optional<BiPoly> witness = std::nullopt) {
  Check c{std::move(id), ok ? Status::Pass : Status::Fail, std::nullopt, std::move(detail)};
  if (!ok) c.witness = std::move(witness);
  return c;
}

inline json trajectoryJson(const LFEntry& e) {
  json j;
  j["verdict"] = e.verdict == LFEntry::Verdict::FiniteDimensional ? "finite" : "cutoff";
  j["dimension"] = e.verdict == LFEntry::Verdict::FiniteDimensional ? json(e.dimension) : json(nullptr);
  j["trajectory"] = e.trajectory;
  return j;
}

inline void addLocalFiniteness(Report& rep, const Endomorphism& phi, const SessionConfig& cfg) {
  const LFReport lf =
      localFiniteReport(phi, static_cast<std::size_t>(cfg.maxDim), static_cast<std::size_t>(cfg.maxIter));
  for (const auto& [name, entry] : {std::pair<const char*, const LFEntry*>{"x", &lf.x}, {"y", &lf.y}}) {
    Check c;
    c.id = std::string("lf.") + name;
    if (entry->verdict == LFEntry::Verdict::FiniteDimensional) {
      c.status = Status::Pass;
      c.detail = "span of the orbit of " + std::string(name) + " has dimension " + std::to_string(entry->dimension);
    } else {
      c.status = Status::Inconclusive;
      c.detail = "cutoff reached after " + std::to_string(entry->trajectory.size()) + " iterates" +
                 (entry->sizeBudgetHit ? " (iterate size budget)" : "");
    }
    rep.checks.push_back(std::move(c));
    rep.output["lf"][name] = trajectoryJson(*entry);
  }
}

inline void addLeibniz(Report& rep, const EDerivation& d, const SessionConfig& cfg, std::int64_t trials) {
  Rng rng(static_cast<std::uint64_t>(cfg.seed));
  for (std::int64_t t = 0; t < trials; ++t) {
    const BiPoly f = randomPoly(d.field(), rng, {5, 6, 4}), g = randomPoly(d.field(), rng, {5, 6, 4});
    const BiPoly lhs = d(f * g), rhs = d(f) * g + d.phi()(f) * d(g);
    if (lhs != rhs) {
      rep.checks.push_back(makeCheck("delta.leibniz", false, "Leibniz identity fails", f * g));
      return;
    }
  }
  rep.checks.push_back(makeCheck("delta.leibniz", true, std::to_string(trials) + " random products"));
}

// delta on a polynomial via the closed form for each monomial.
inline std::optional<BiPoly> closedFormDelta(const NormalForm& nf, const BiPoly& f) {
  if (!std::holds_alternative<Case4>(nf) && !std::holds_alternative<Case6>(nf)) return std::nullopt;
  BiPoly out(f.field());
  for (const auto& [m, v] : f.terms()) {
    if (m == Monomial{}) continue;
    const BiPoly t = std::holds_alternative<Case4>(nf) ? deltaMonomialClosedForm(m.i, m.j, nf)
                                                       : deltaCase6ClosedForm(m.i, m.j, nf);
    out += t.scaled(Coeff(f.field(), v));
  }
  return out;
}

inline Check compareImageWindows(const std::string& id, const NormalForm& nf, std::int64_t D) {
  const TruncatedSpace expected = expectedImageForCase(nf, D);
  const TruncatedSpace actual = imageWindowForCase(nf, D);
  if (expected.sameSpan(actual))
    return makeCheck(id, true, "degree <= " + std::to_string(D) + " window of Im delta matches (dim " +
                                   std::to_string(actual.dimension()) + ")");
  for (const auto& row : expected.basis().rows())
    if (!actual.contains(row)) return makeCheck(id, false, "expected element missing from the image window", row);
  for (const auto& row : actual.basis().rows())
    if (!expected.contains(row)) return makeCheck(id, false, "image window has an unexpected element", row);
  return makeCheck(id, false, "spans differ");
}

}  // namespace detail

/// Seeded candidates for MZ probing of C + <y^s p(y^r)>: random polynomials,
/// ideal multiples, and C-elements shifted by ideal multiples.
inline std::vector<BiPoly> mzSamples(const Field& k, std::int64_t r, std::int64_t s, const BiPoly& p,
                                     std::uint64_t seed, std::int64_t count) {
  Rng rng(seed);
  const BiPoly gen = idealGenerator(r, s, p);
  const MonomialPattern C = MonomialPattern::C(r, s);
  std::vector<BiPoly> out;
  for (std::int64_t t = 0; t < count; ++t) {
    const BiPoly f = randomPoly(k, rng, {4, 3, 3});
    switch (t % 3) {
      case 0:
        out.push_back(f);
        break;
      case 1:
        out.push_back(gen * f);
        break;
      default: {
        BiPoly c(k);
        for (const auto& [m, v] : f.terms())
          if (C.contains(m)) c.addTerm(m, v);
        out.push_back(c + gen * randomPoly(k, rng, {2, 2, 3}));
      }
    }
  }
  return out;
}

struct MZSummary {
  std::size_t samples = 0;
  std::size_t inWeakRadical = 0;
  std::size_t violations = 0;
  std::optional<BiPoly> firstViolation;
};

inline MZSummary runMZProbes(const std::vector<BiPoly>& samples, const MembershipOracle& M, const SessionConfig& cfg) {
  MZSummary out;
  const std::int64_t window = std::max(cfg.N, cfg.mHi);
  for (const auto& f : samples) {
    ++out.samples;
    if (!weakRadicalProbe(f, M, window)) continue;
    ++out.inWeakRadical;
    const MZProbeReport rep = mzFalsifierProbe(f, M, cfg.genDeg, cfg.mLo, cfg.mHi);
    if (rep.violations() > 0) {
      ++out.violations;
      if (!out.firstViolation) out.firstViolation = f;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

inline Report cmdDelta(const SessionConfig& cfg) {
  Report rep{"delta", cfg, {}, json::object(), std::nullopt};
  const Field k = cfg.fieldOr(1);
  if (!cfg.endo) throw UsageError("delta: an endomorphism is required (--endo)");
  if (!cfg.f) throw UsageError("delta: a polynomial is required (--f)");
  const EndoSpec spec = parseEndo(*cfg.endo, k);
  const BiPoly f = parse(*cfg.f, k);
  const EDerivation d(spec.phi);
  const BiPoly image = d(f);
  rep.output["delta"] = toString(image);
  rep.output["phi"] = toString(spec.phi(f));
  rep.checks.push_back(detail::makeCheck("delta.evaluate", true, "delta(f) = f - phi(f)"));
  if (spec.nf) {
    if (auto closed = detail::closedFormDelta(*spec.nf, f)) {
      rep.output["closed_form"] = toString(*closed);
      rep.checks.push_back(detail::makeCheck("delta.closed-form", *closed == image,
                                             *closed == image ? "closed form agrees with substitution"
                                                              : "closed form differs from substitution",
                                             *closed - image));
    }
  }
  return rep;
}

/// Representative parameters per case; a matching --endo overrides them.
inline Report cmdVerifySuite(int whichCase, const SessionConfig& cfg) {
  if (whichCase < 1 || whichCase > 7) throw UsageError("verify: case must be in 1..7");
  Report rep{"verify", cfg, {}, json::object(), std::nullopt};
  rep.output["case"] = whichCase;
  const Field k = cfg.fieldOr(1);
  auto c = [&](long n) { return Coeff(k, n); };
  std::optional<NormalForm> nf;
  std::optional<Endomorphism> phi;
  if (cfg.endo) {
    const std::string t = detail::trim(*cfg.endo);
    if (whichCase == 5 && t.rfind("case", 0) != 0) {
      phi = parseRawEndomorphism(t, k);
    } else {
      const EndoSpec spec = parseEndo(t, k);
      if (!spec.nf || caseNumber(*spec.nf) != whichCase)
        throw UsageError("verify: --endo must be a case " + std::to_string(whichCase) + " normal form");
      nf = spec.nf;
    }
  } else {
    switch (whichCase) {
      case 1: nf = Case1{c(2), c(3)}; break;
      case 2: nf = Case2{c(5)}; break;
      case 3: nf = Case3{1, c(1), c(2)}; break;
      case 4: nf = Case4{2, 1, c(-1), parse("y + 1", k)}; break;
      case 5: phi = Endomorphism(BiPoly::y(k), BiPoly::y(k)); break;
      case 6: nf = Case6{c(-1), parse("x", k)}; break;
      default: nf = Case7{c(2), parse("x", k)}; break;
    }
  }
  if (nf) phi = buildNormalForm(*nf);
  rep.output["endomorphism"] = {{"x", toString(phi->imageX())}, {"y", toString(phi->imageY())}};
  if (nf) rep.output["normal_form"] = toString(*nf);
  const EDerivation d(*phi);

  detail::addLocalFiniteness(rep, *phi, cfg);
  detail::addLeibniz(rep, d, cfg, std::min<std::int64_t>(cfg.trials, 20));

  switch (whichCase) {
    case 1:
    case 3:
    case 6:
      rep.checks.push_back(detail::compareImageWindows("case" + std::to_string(whichCase) + ".image", *nf, cfg.D));
      if (whichCase == 6) {
        bool agree = true;
        for (const auto& u : monomialsUpTo(cfg.D)) {
          if (u == Monomial{}) continue;
          if (deltaCase6ClosedForm(u.i, u.j, *nf) != d(u)) agree = false;
        }
        rep.checks.push_back(detail::makeCheck("case6.closed-form", agree, "closed form on monomials of degree <= D"));
      }
      break;
    case 2: {
      const BiPoly pre = -BiPoly::y(k);
      rep.checks.push_back(detail::makeCheck("case2.one-in-image", d(pre) == BiPoly::one(k), "delta(-y) = 1", pre));
      break;
    }
    case 7: {
      const auto& c7 = std::get<Case7>(*nf);
      const BiPoly pre = (BiPoly::x(k) + c7.g.shifted({0, 1})).scaled(-c7.lambda.inverse());
      rep.output["preimage_of_one"] = toString(pre);
      rep.checks.push_back(
          detail::makeCheck("case7.one-in-image", d(pre) == BiPoly::one(k), "delta(-(x + y g)/lambda) = 1", pre));
      break;
    }
    case 5: {
      rep.checks.push_back(detail::makeCheck("case5.idempotent-cube", checkIdempotentCube(*phi), "phi^2 = phi^3"));
      const BiPoly J = jacobianDeterminant(*phi);
      rep.checks.push_back(detail::makeCheck("case5.jacobian", J.isZero(), "Jacobian determinant vanishes", J));
      break;
    }
    case 4: {
      const auto& c4 = std::get<Case4>(*nf);
      for (auto& ch : verifyImageIdentity(*nf, cfg.D, cfg.margin).checks) rep.checks.push_back(std::move(ch));
      rep.checks.push_back(checkBImageFactorization(*nf, cfg.D));

      bool closedOk = true;
      for (const auto& u : monomialsUpTo(cfg.D))
        if (deltaMonomialClosedForm(u.i, u.j, *nf) != d(u)) closedOk = false;
      rep.checks.push_back(detail::makeCheck("delta.closed-form", closedOk, "closed form on monomials of degree <= D"));

      const MonomialPattern C = MonomialPattern::C(c4.r, c4.s);
      const MonomialMap map = [&d](const Monomial& u) { return d(u); };
      Check pre{"image.C-preimages", Status::Pass, std::nullopt, ""};
      std::size_t solved = 0;
      for (const auto& u : monomialsUpTo(cfg.D)) {
        if (!C.contains(u)) continue;
        const BiPoly target = BiPoly::monomial(k, u);
        try {
          const BiPoly h = triangularPreimageSolve(map, C, target, TruncatedSpace::kUnbounded);
          if (d(h) != target || !supportMembership(h, C)) throw PreconditionError("preimage does not reproduce");
          ++solved;
        } catch (const PreconditionError& e) {
          pre.status = Status::Fail;
          pre.witness = target;
          pre.detail = e.what();
          break;
        }
      }
      if (pre.status == Status::Pass) pre.detail = std::to_string(solved) + " C-monomials have C-preimages";
      rep.checks.push_back(std::move(pre));

      const MembershipOracle M = imageOracle(c4.r, c4.s, c4.p);
      const MZSummary mz = runMZProbes(mzSamples(k, c4.r, c4.s, c4.p, static_cast<std::uint64_t>(cfg.seed), cfg.samples),
                                       M, cfg);
      rep.output["mz"] = {{"samples", mz.samples}, {"in_weak_radical", mz.inWeakRadical}, {"violations", mz.violations}};
      rep.checks.push_back(detail::makeCheck(
          "mz.probe", mz.violations == 0,
          std::to_string(mz.inWeakRadical) + " of " + std::to_string(mz.samples) +
              " samples in the weak-radical window; " + std::to_string(mz.violations) + " with violations",
          mz.firstViolation));
      break;
    }
    default:
      break;
  }
  return rep;
}

inline Report cmdImageCheck(const SessionConfig& cfg) {
  Report rep{"image-check", cfg, {}, json::object(), std::nullopt};
  const Field k = cfg.fieldOr(1);
  const std::string text = cfg.endo.value_or("case4 { r = 2, s = 1, b = \"-1\", p = \"y + 1\" }");
  const EndoSpec spec = parseEndo(text, k);
  if (!spec.nf || !std::holds_alternative<Case4>(*spec.nf))
    throw UsageError("image-check: --endo must be a case 4 normal form");
  requireImageParameters(std::get<Case4>(*spec.nf).p);
  rep.output["normal_form"] = toString(*spec.nf);
  rep.output["generator"] = toString(idealGenerator(std::get<Case4>(*spec.nf).r, std::get<Case4>(*spec.nf).s,
                                                    std::get<Case4>(*spec.nf).p));
  for (auto& ch : verifyImageIdentity(*spec.nf, cfg.D, cfg.margin).checks) rep.checks.push_back(std::move(ch));
  rep.checks.push_back(checkBImageFactorization(*spec.nf, cfg.D));
  return rep;
}

inline Report cmdClassify(const SessionConfig& cfg) {
  Report rep{"classify", cfg, {}, json::object(), std::nullopt};
  const Field k = cfg.fieldOr(1);
  if (!cfg.endo) throw UsageError("classify: an endomorphism is required (--endo)");
  const EndoSpec spec = parseEndo(*cfg.endo, k);
  const auto nf = recognizeNormalForm(spec.phi);
  rep.output["jacobian"] = toString(jacobianDeterminant(spec.phi));
  Check c{"classify.normal-form", Status::Pass, std::nullopt, ""};
  if (nf) {
    rep.output["case"] = caseNumber(*nf);
    rep.output["normal_form"] = toString(*nf);
    c.detail = "matches case " + std::to_string(caseNumber(*nf));
  } else {
    rep.output["case"] = nullptr;
    c.status = Status::Inconclusive;
    c.detail = "no normal-form shape matches (the map may still be conjugate to one)";
  }
  rep.checks.push_back(std::move(c));
  detail::addLocalFiniteness(rep, spec.phi, cfg);
  return rep;
}

inline Report cmdProbe(const std::string& kind, const SessionConfig& cfg) {
  Report rep{"probe " + kind, cfg, {}, json::object(), std::nullopt};
  const std::int64_t r = cfg.r.value_or(2), s = cfg.s.value_or(1);

  if (kind == "lf") {
    const Field k = cfg.fieldOr(1);
    const EndoSpec spec = parseEndo(cfg.endo.value_or("x -> x^2, y -> y"), k);
    detail::addLocalFiniteness(rep, spec.phi, cfg);
  } else if (kind == "wr" || kind == "mz") {
    const Field k = cfg.fieldOr(1);
    const BiPoly p = parse(cfg.p.value_or("y + 1"), k);
    const MembershipOracle M = imageOracle(r, s, p);
    rep.output["subspace"] = M.name;
    std::vector<BiPoly> samples;
    if (cfg.f) samples.push_back(parse(*cfg.f, k));
    else samples = mzSamples(k, r, s, p, static_cast<std::uint64_t>(cfg.seed), cfg.samples);
    if (kind == "wr") {
      json entries = json::array();
      std::size_t inside = 0;
      for (const auto& f : samples) {
        const auto fail = weakRadicalFirstFailure(f, M, cfg.N);
        inside += fail ? 0 : 1;
        entries.push_back({{"f", toString(f)}, {"first_failure", fail ? json(*fail) : json(nullptr)}});
      }
      rep.output["samples"] = entries;
      if (cfg.f) {
        const bool in = inside == 1;
        rep.checks.push_back(detail::makeCheck(
            "wr.window", in, in ? "f^m lies in M for 1 <= m <= N" : "some power f^m with m <= N leaves M",
            samples.front()));
      } else {
        // Transfer along the CRT projections when p splits over the field.
        const auto roots = splitOverField(p);
        if (!roots) {
          rep.output["crt"] = "p does not split over the field; transfer check skipped";
        } else {
          const CRTDecomposition crt = crtDecompose(k, s, *roots, r, p);
          std::size_t violations = 0;
          for (const auto& comp : crt.components)
            violations += wrTransferCheck(samples, M, comp.modulus, cfg.N).violations.size();
          rep.checks.push_back(detail::makeCheck("wr.transfer", violations == 0,
                                                 std::to_string(crt.components.size()) + " CRT components, " +
                                                     std::to_string(inside) + " samples in the window"));
        }
      }
    } else {
      const std::int64_t window = std::max(cfg.N, cfg.mHi);
      if (cfg.f) {
        const BiPoly f = samples.front();
        if (auto fail = weakRadicalFirstFailure(f, M, window)) {
          rep.checks.push_back(detail::makeCheck("mz.precondition", false,
                                                 "f^" + std::to_string(*fail) + " is not in " + M.name, f));
          return rep;
        }
        const MZProbeReport probe = mzFalsifierProbe(f, M, cfg.genDeg, cfg.mLo, cfg.mHi);
        json entries = json::array();
        for (const auto& e : probe.entries)
          entries.push_back({{"g", toString(BiPoly::monomial(k, e.g))}, {"n", e.threshold}, {"failing", e.failing}});
        rep.output["entries"] = entries;
        rep.checks.push_back(detail::makeCheck("mz.probe", probe.violations() == 0,
                                               std::to_string(probe.violations()) + " persistent violations", f));
      } else {
        const MZSummary mz = runMZProbes(samples, M, cfg);
        rep.output["mz"] = {{"samples", mz.samples}, {"in_weak_radical", mz.inWeakRadical}, {"violations", mz.violations}};
        rep.checks.push_back(detail::makeCheck("mz.probe", mz.violations == 0,
                                               std::to_string(mz.violations) + " samples with violations",
                                               mz.firstViolation));
      }
    }
  } else if (kind == "idempotent") {
    const std::int64_t rr = cfg.r.value_or(4);
    if (rr < 1 || rr > 20) throw UsageError("probe idempotent: r must be in 1..20");
    const Field k = cfg.fieldOr(static_cast<int>(rr));
    const auto found = idempotentSearchCprimeR(k, rr);
    json list = json::array();
    for (const auto& u : found) list.push_back(toString(u));
    rep.output["idempotents"] = list;
    const bool onlyZero = found.size() == 1 && found[0].isZero();
    rep.checks.push_back(detail::makeCheck("idempotent.only-zero", onlyZero,
                                           std::to_string(std::int64_t{1} << rr) + " value vectors inverted",
                                           onlyZero ? std::nullopt : std::optional<BiPoly>(found.back())));
  } else if (kind == "nilpotent") {
    const Field k = cfg.fieldOr(1);
    const BiPoly h = parse(cfg.modulus.value_or("y^2"), k);
    const BiPoly f = parse(cfg.f.value_or("x*y"), k);
    const PrincipalQuotient A(h);
    const bool fast = A.isNilpotent(f);
    BiPoly power = A.reduce(f);
    for (std::int64_t e = 1; e < h.degreeY(); ++e) power = A.multiply(power, f);
    rep.output["nilpotent"] = fast;
    rep.output["radical_modulus"] = toString(A.radicalModulus());
    rep.checks.push_back(detail::makeCheck("nilpotent.agreement", fast == power.isZero(),
                                           "squarefree criterion matches f^deg(h) mod h", f));
  } else if (kind == "newton") {
    const Field k = cfg.fieldOr(1);
    Rng rng(static_cast<std::uint64_t>(cfg.seed));
    std::optional<BiPoly> minkowskiWitness, vertexWitness;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
      const BiPoly f = randomPoly(k, rng, {8, 6, 5}), g = randomPoly(k, rng, {8, 6, 5});
      if (!minkowskiWitness && polygonOf(f * g) != minkowskiSum(polygonOf(f), polygonOf(g))) minkowskiWitness = f * g;
      for (std::int64_t m = 1; m <= 5 && !vertexWitness; ++m)
        if (!allPassed(vertexPowerCheck(f, m))) vertexWitness = f;
    }
    const std::string n = std::to_string(cfg.trials);
    rep.checks.push_back(detail::makeCheck("newton.minkowski", !minkowskiWitness,
                                           n + " random pairs: Pol(fg) = Pol(f) + Pol(g)", minkowskiWitness));
    rep.checks.push_back(detail::makeCheck("newton.vertex-power", !vertexWitness,
                                           n + " random polynomials, m <= 5", vertexWitness));
    if (cfg.f) {
      const NewtonPolygon P = polygonOf(parse(*cfg.f, k));
      json verts = json::array();
      for (const auto& v : P.vertices()) verts.push_back({v.i, v.j});
      rep.output["polygon"] = verts;
    }
  } else {
    throw UsageError("unknown probe '" + kind + "' (expected lf, wr, mz, idempotent, nilpotent or newton)");
  }
  return rep;
}

/// Run a command with timing recorded only when requested.
template <class Fn>
Report timed(const SessionConfig& cfg, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Report rep = fn();
  if (cfg.timing)
    rep.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace lfed::cli
