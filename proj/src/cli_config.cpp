#include <set>

#include "paraspec/cli.hpp"
#include "paraspec/errors.hpp"
#include "paraspec/finite_field.hpp"

namespace paraspec {

namespace {

class Errors {
 public:
  void add(const std::string& path, const std::string& msg) { list_.push_back(path + ": " + msg); }
  void add_plain(const std::string& msg) { list_.push_back(msg); }
  bool empty() const { return list_.empty(); }
  [[noreturn]] void raise() const {
    std::string msg;
    for (const auto& e : list_) msg += (msg.empty() ? "" : "; ") + e;
    throw InvalidInput(msg);
  }

 private:
  std::vector<std::string> list_;
};

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

std::optional<std::int64_t> get_int(const Json& j, const std::string& path, Errors& err) {
  if (!j.is_number_integer()) {
    err.add(path, "expected an integer");
    return std::nullopt;
  }
  return j.get<std::int64_t>();
}

std::optional<Rational> get_rational(const Json& j, const std::string& path, Errors& err) {
  try {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const InvalidInput& e) {
    err.add(path, e.what());
    return std::nullopt;
  }
  err.add(path, "expected an integer or a rational string such as \"1/2\"");
  return std::nullopt;
}

std::string position_label(const Json& j, const std::string& path, Errors& err) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "infinity" || s == "∞") s = "inf";
    if (s.empty()) err.add(path, "empty position");
    return s;
  }
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) err.add(path, "position must be non-negative or \"inf\"");
    return std::to_string(j.get<std::int64_t>());
  }
  err.add(path, "expected a string or integer position");
  return {};
}

std::vector<int> int_list(const Json& j, const std::string& path, Errors& err, bool positive) {
  std::vector<int> out;
  if (!j.is_array()) {
    err.add(path, "expected an array of integers");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    auto v = get_int(j[i], p, err);
    if (!v) continue;
    if (positive && *v < 1) err.add(p, "parts must be positive");
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

const std::set<std::string> kConfigKeys{"rank",  "genus", "points",     "field", "precision",
                                        "seed",  "gerbe", "zeta_depth", "local"};

}  // namespace

ParabolicData RunConfig::data() const {
  std::vector<MarkedPoint> pts;
  for (const auto& p : points) pts.push_back(make_marked_point(p.position, p.partition, rank, p.weights));
  return ParabolicData(rank, genus, std::move(pts));
}

Json RunConfig::to_json() const {
  Json j;
  j["rank"] = rank;
  j["genus"] = genus;
  Json pts = Json::array();
  for (const auto& p : points) {
    Json pj{{"position", p.position}, {"partition", p.partition}};
    if (!p.weights.empty()) {
      Json w = Json::array();
      for (const auto& x : p.weights) w.push_back(to_string(x));
      pj["weights"] = w;
    }
    pts.push_back(pj);
  }
  j["points"] = pts;
  if (q) {
    j["field"] = {{"q", *q}};
  } else {
    j["field"] = "rationals";
  }
  if (precision) j["precision"] = *precision;
  j["seed"] = seed;
  if (d || e) {
    Json g = Json::object();
    if (d) g["d"] = *d;
    if (e) g["e"] = *e;
    j["gerbe"] = g;
  }
  if (zeta_depth) j["zeta_depth"] = zeta_depth;
  if (local) j["local"] = {{"mu", local->mu}, {"coefficients", local->coefficients}};
  return j;
}

RunConfig parse_config(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
  Errors err;
  RunConfig cfg;
  for (const auto& [k, v] : j.items()) {
    if (!kConfigKeys.count(k)) err.add(k, "unknown field");
  }

  // A bare local equation for `resolve` needs no global data.
  const bool local_only = j.contains("local") && !j.contains("points");
  if (!j.contains("rank")) {
    if (!local_only) err.add("rank", "missing");
  } else if (auto r = get_int(j["rank"], "rank", err)) {
    cfg.rank = static_cast<int>(*r);
  }
  if (j.contains("genus")) {
    if (auto g = get_int(j["genus"], "genus", err)) cfg.genus = static_cast<int>(*g);
  }

  if (!local_only && (!j.contains("points") || !j["points"].is_array())) {
    err.add("points", "expected an array of marked points");
  } else if (!local_only) {
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      const Json& pj = j["points"][i];
      const std::string path = "points[" + std::to_string(i) + "]";
      if (!pj.is_object()) {
        err.add(path, "expected an object");
        continue;
      }
      PointSpec p;
      if (pj.contains("position")) {
        p.position = position_label(pj["position"], path + ".position", err);
      } else {
        err.add(path + ".position", "missing");
      }
      if (pj.contains("partition")) {
        p.partition = int_list(pj["partition"], path + ".partition", err, true);
        int total = 0;
        for (int v : p.partition) total += v;
        if (p.partition.empty()) err.add(path + ".partition", "empty partition");
        if (cfg.rank > 0 && total != cfg.rank) {
          err.add(path + ".partition", "partition at point '" + p.position + "' sums to " + std::to_string(total) +
                                           ", expected r = " + std::to_string(cfg.rank));
        }
      } else {
        err.add(path + ".partition", "missing");
      }
      if (pj.contains("weights")) {
        if (!pj["weights"].is_array()) {
          err.add(path + ".weights", "expected an array");
        } else {
          for (std::size_t k = 0; k < pj["weights"].size(); ++k) {
            const std::string wp = path + ".weights[" + std::to_string(k) + "]";
            if (auto w = get_rational(pj["weights"][k], wp, err)) {
              if (*w < 0 || *w >= 1) err.add(wp, "weight outside [0,1)");
              p.weights.push_back(*w);
            }
          }
        }
      }
      cfg.points.push_back(std::move(p));
    }
  }

  if (j.contains("field")) {
    const Json& f = j["field"];
    const Json* qj = &f;
    if (f.is_object()) {
      if (f.contains("q")) {
        qj = &f["q"];
      } else {
        err.add("field", "expected {\"q\": N} or \"rationals\"");
        qj = nullptr;
      }
    }
    if (qj) {
      if (qj->is_string() && qj->get<std::string>() == "rationals") {
        cfg.q.reset();
      } else if (qj->is_number_unsigned()) {
        cfg.q = qj->get<std::uint64_t>();
        try {
          prime_power_decompose(*cfg.q);
        } catch (const InvalidInput& e) {
          err.add("field.q", e.what());
        }
      } else {
        err.add("field.q", "expected a prime power or \"rationals\"");
      }
    }
  }
  if (j.contains("precision")) {
    if (auto p = get_int(j["precision"], "precision", err)) {
      if (*p < 1) err.add("precision", "must be positive");
      cfg.precision = static_cast<int>(*p);
    }
  }
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned()) {
      cfg.seed = j["seed"].get<std::uint64_t>();
    } else {
      err.add("seed", "expected a non-negative integer");
    }
  }
  if (j.contains("gerbe")) {
    const Json& g = j["gerbe"];
    if (!g.is_object()) {
      err.add("gerbe", "expected {\"d\": int, \"e\": int}");
    } else {
      if (g.contains("d")) cfg.d = get_int(g["d"], "gerbe.d", err);
      if (g.contains("e")) cfg.e = get_int(g["e"], "gerbe.e", err);
    }
  }
  if (j.contains("zeta_depth")) {
    if (auto z = get_int(j["zeta_depth"], "zeta_depth", err)) {
      if (*z < 0) err.add("zeta_depth", "must be non-negative");
      cfg.zeta_depth = static_cast<int>(*z);
    }
  }
  if (j.contains("local")) {
    const Json& l = j["local"];
    if (!l.is_object() || !l.contains("mu") || !l.contains("coefficients") || !l["coefficients"].is_array()) {
      err.add("local", "expected {\"mu\": [...], \"coefficients\": [...]}");
    } else {
      LocalSpec ls;
      ls.mu = int_list(l["mu"], "local.mu", err, true);
      int total = 0;
      for (int v : ls.mu) total += v;
      for (std::size_t k = 0; k < l["coefficients"].size(); ++k) {
        const Json& c = l["coefficients"][k];
        if (c.is_number_integer()) {
          ls.coefficients.push_back(std::to_string(c.get<std::int64_t>()));
        } else if (c.is_string()) {
          ls.coefficients.push_back(c.get<std::string>());
        } else {
          err.add("local.coefficients[" + std::to_string(k) + "]", "expected an integer or rational string");
        }
      }
      if (cfg.rank == 0) cfg.rank = total;
      if (static_cast<int>(ls.coefficients.size()) != total) {
        err.add("local.coefficients", "expected " + std::to_string(total) + " coefficients (one per l = 1..r)");
      }
      cfg.local = std::move(ls);
    }
  }

  // Standing assumptions checked on the assembled data.
  if (!local_only) {
    if (err.empty()) {
      std::vector<MarkedPoint> pts;
      for (const auto& p : cfg.points) pts.push_back(make_marked_point(p.position, p.partition, cfg.rank, p.weights));
      for (const auto& msg : ParabolicData::validate(cfg.rank, cfg.genus, pts)) err.add_plain(msg);
    } else if (cfg.genus >= 0 && 2 * cfg.genus - 2 + static_cast<int>(cfg.points.size()) <= 0) {
      err.add_plain("2g-2+deg D must be positive");
    }
  }
  if (!err.empty()) err.raise();
  return cfg;
}

namespace {

EPolynomial parse_epoly(const Json& j, const std::string& path, Errors& err) {
  EPolynomial e;
  if (!j.is_array()) {
    err.add(path, "expected an array of {u, v, coeff} terms");
    return e;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    if (!t.is_object() || !t.contains("u") || !t.contains("v") || !t.contains("coeff")) {
      err.add(p, "expected {\"u\", \"v\", \"coeff\"}");
      continue;
    }
    auto u = get_rational(t["u"], p + ".u", err);
    auto v = get_rational(t["v"], p + ".v", err);
    auto c = get_int(t["coeff"], p + ".coeff", err);
    if (u && v && c) e.add_term(*u, *v, Integer(static_cast<long>(*c)));
  }
  return e;
}

CountPolynomial parse_count(const Json& j, const std::string& path, Errors& err) {
  CountPolynomial out;
  if (!j.is_array()) {
    err.add(path, "expected an array of {exp, coeff} terms");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    if (!t.is_object() || !t.contains("exp") || !t.contains("coeff")) {
      err.add(p, "expected {\"exp\", \"coeff\"}");
      continue;
    }
    auto e = get_rational(t["exp"], p + ".exp", err);
    auto c = get_int(t["coeff"], p + ".coeff", err);
    if (e && c) {
      out[*e] += Integer(static_cast<long>(*c));
      if (sgn(out[*e]) == 0) out.erase(*e);
    }
  }
  return out;
}

}  // namespace

OrbifoldDescription parse_sectors(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw InvalidInput("sector file: expected a JSON object");
  Errors err;
  OrbifoldDescription d;
  if (auto n = j.contains("ambient_dim") ? get_int(j["ambient_dim"], "ambient_dim", err) : std::nullopt) {
    d.ambient_dim = static_cast<int>(*n);
  } else if (!j.contains("ambient_dim")) {
    err.add("ambient_dim", "missing");
  }
  if (!j.contains("group") || !j["group"].is_array()) {
    err.add("group", "expected an array of {label, order}");
  } else {
    for (std::size_t i = 0; i < j["group"].size(); ++i) {
      const Json& g = j["group"][i];
      const std::string p = "group[" + std::to_string(i) + "]";
      if (!g.is_object() || !g.contains("label") || !g["label"].is_string() || !g.contains("order")) {
        err.add(p, "expected {\"label\": string, \"order\": int}");
        continue;
      }
      auto o = get_int(g["order"], p + ".order", err);
      d.group.push_back({g["label"].get<std::string>(), o ? static_cast<int>(*o) : 1});
    }
  }
  if (!j.contains("sectors") || !j["sectors"].is_object()) {
    err.add("sectors", "expected an object keyed by group element");
  } else {
    for (const auto& [element, comps] : j["sectors"].items()) {
      const std::string sp = "sectors." + element;
      auto& out = d.sectors[element];
      if (!comps.is_array()) {
        err.add(sp, "expected an array of components");
        continue;
      }
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const Json& c = comps[i];
        const std::string p = sp + "[" + std::to_string(i) + "]";
        if (!c.is_object()) {
          err.add(p, "expected an object");
          continue;
        }
        SectorComponent comp;
        comp.label = c.value("label", element + "#" + std::to_string(i));
        if (c.contains("eigen_exponents")) {
          comp.eigen_exponents = int_list(c["eigen_exponents"], p + ".eigen_exponents", err, false);
        } else {
          err.add(p + ".eigen_exponents", "missing");
        }
        if (c.contains("e_poly")) comp.e_poly = parse_epoly(c["e_poly"], p + ".e_poly", err);
        if (c.contains("twisted_e_poly")) comp.twisted_e_poly = parse_epoly(c["twisted_e_poly"], p + ".twisted_e_poly", err);
        if (c.contains("count")) comp.count = parse_count(c["count"], p + ".count", err);
        if (c.contains("twist_trace")) {
          const Json& t = c["twist_trace"];
          if (!t.is_object() || !t.contains("num") || !t.contains("order")) {
            err.add(p + ".twist_trace", "expected {\"num\", \"order\"}");
          } else {
            auto num = get_int(t["num"], p + ".twist_trace.num", err);
            auto ord = get_int(t["order"], p + ".twist_trace.order", err);
            if (num && ord) comp.twist_trace = RootOfUnity{static_cast<long>(*num), static_cast<long>(*ord)};
          }
        }
        out.push_back(std::move(comp));
      }
    }
  }
  if (!err.empty()) err.raise();
  d.validate();
  return d;
}

}  // namespace paraspec
