#include "diamlaw/records.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace diamlaw {

namespace {

using nlohmann::json;

json config_object(std::string_view config_json) {
  if (config_json.empty()) return json::object();
  json j = json::parse(config_json);
  if (!j.is_object()) throw std::invalid_argument("record config must be a JSON object");
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string_view kind_name(CurveKind k) {
  return k == CurveKind::tail ? "tail" : "overlap";
}

json limit_law_json(const LimitLaw& law) {
  return {{"a", law.a}, {"Lambda_a", law.lambda_a}, {"K_a", law.k_a()}};
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    out += csv_field(fields[k]);
  }
  out += '\n';
  return out;
}

std::string record_basename(std::string_view experiment, double a, std::size_t n,
                            std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return std::string(experiment) + "_a" + buf + "_n" + std::to_string(n) + "_seed" +
         std::to_string(seed);
}

std::string constants_json(const ConstantEstimate& e) {
  const LimitLaw law = lambda_a(e.value, e.a);
  json j = {{"a", e.a},
            {"I_a", e.value},
            {"stderr", e.std_error},
            {"method", std::string(to_string(e.method))},
            {"budget", e.budget},
            {"Lambda_a", law.lambda_a},
            {"K_a", law.k_a()}};
  if (e.method == IntegralMethod::mc5d) {
    j["hits"] = e.hits;
    j["shell_hits"] = e.shell_hits;
    j["master_seed"] = e.master_seed;
  } else {
    j["coarse_value"] = e.coarse_value;
    j["medium_value"] = e.medium_value;
    j["converged"] = e.converged;
  }
  return dump(j);
}

ConstantEstimate constants_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ConstantEstimate e;
    e.a = j.at("a").get<double>();
    e.value = j.at("I_a").get<double>();
    e.std_error = j.at("stderr").get<double>();
    e.budget = j.at("budget").get<std::uint64_t>();
    const auto method = j.at("method").get<std::string>();
    if (method == "mc5d") {
      e.method = IntegralMethod::mc5d;
      e.hits = j.value("hits", std::uint64_t{0});
      e.shell_hits = j.value("shell_hits", std::uint64_t{0});
      e.master_seed = j.value("master_seed", std::uint64_t{0});
    } else if (method == "reduced3d") {
      e.method = IntegralMethod::reduced3d;
      e.coarse_value = j.value("coarse_value", 0.0);
      e.medium_value = j.value("medium_value", 0.0);
      e.converged = j.value("converged", true);
    } else {
      throw std::runtime_error("unknown method '" + method + "'");
    }
    return e;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("constants record: ") + ex.what());
  }
}

std::string to_json(const TailCurve& c, std::string_view config_json) {
  json pts = json::array();
  for (const auto& p : c.points) {
    json jp = {{"eps", p.eps},
               {"pairs", p.pairs},
               {"hits", p.hits},
               {"window_mass", p.window_mass},
               {"prob", p.prob},
               {"std_error", p.std_error},
               {"smoothed", p.smoothed},
               {"in_fit", p.in_fit},
               {"flagged", p.flagged}};
    if (c.kind == CurveKind::overlap) {
      jp["marginal_prob"] = p.marginal_prob;
      jp["marginal_std_error"] = p.marginal_std_error;
      jp["clipped"] = p.clipped;
    }
    pts.push_back(std::move(jp));
  }
  json j = {{"experiment", kind_name(c.kind)},
            {"config", config_object(config_json)},
            {"a", c.a},
            {"master_seed", c.master_seed},
            {"n_pairs", c.n_pairs},
            {"localized", c.localized},
            {"fit_eps_min", c.fit_eps_min},
            {"fit_eps_max", c.fit_eps_max},
            {"fitted_slope", c.fitted_slope},
            {"fitted_intercept", c.fitted_intercept},
            {"slope_std_error", c.slope_std_error},
            {"points", std::move(pts)}};
  if (c.kind == CurveKind::overlap) {
    j["n_outer"] = c.n_outer;
    j["n_inner"] = c.n_inner;
  }
  return dump(j);
}

std::string to_csv(const TailCurve& c) {
  std::string out = csv_row({"eps", "pairs", "hits", "window_mass", "prob", "std_error",
                             "smoothed", "marginal_prob", "marginal_std_error", "clipped",
                             "in_fit", "flagged"});
  for (const auto& p : c.points) {
    out += csv_row({format_number(p.eps), std::to_string(p.pairs), std::to_string(p.hits),
                    format_number(p.window_mass), format_number(p.prob),
                    format_number(p.std_error), format_number(p.smoothed),
                    format_number(p.marginal_prob), format_number(p.marginal_std_error),
                    std::to_string(p.clipped), p.in_fit ? "1" : "0", p.flagged ? "1" : "0"});
  }
  return out;
}

std::string to_json(const PoissonSummary& s, std::string_view config_json) {
  json per_t = json::array();
  for (const auto& pt : s.per_t) {
    per_t.push_back({{"t", pt.t},
                     {"lambda_theory", pt.lambda_theory},
                     {"mean_count", pt.mean_count},
                     {"var_count", pt.var_count},
                     {"zero_fraction", pt.zero_fraction},
                     {"exceed_fraction", pt.exceed_fraction},
                     {"pmf", pt.pmf}});
  }
  json j = {{"experiment", "poisson"},
            {"config", config_object(config_json)},
            {"a", s.a},
            {"n", s.n},
            {"replications", s.replications},
            {"method", std::string(to_string(s.method))},
            {"master_seed", s.master_seed},
            {"law", limit_law_json(s.law)},
            {"event_identity_holds", s.event_identity_holds},
            {"per_t", std::move(per_t)}};
  return dump(j);
}

std::string to_csv(const PoissonSummary& s) {
  std::vector<std::string> header = {"replication", "stream_index", "m_n", "rescaled_deficit",
                                     "pairs_examined"};
  for (const auto& pt : s.per_t) header.push_back("N(" + format_number(pt.t) + ")");
  std::string out = csv_row(header);
  for (std::size_t r = 0; r < s.reps.size(); ++r) {
    const auto& rep = s.reps[r];
    std::vector<std::string> row = {std::to_string(r), std::to_string(rep.stream_index),
                                    format_number(rep.m_n), format_number(rep.rescaled_deficit),
                                    std::to_string(rep.pairs_examined)};
    for (auto c : rep.counts) row.push_back(std::to_string(c));
    out += csv_row(row);
  }
  return out;
}

std::string to_json(const LimitLawReport& r, std::string_view config_json) {
  json j = {{"experiment", "limit"},
            {"config", config_object(config_json)},
            {"a", r.a},
            {"n", r.n},
            {"replications", r.replications},
            {"method", std::string(to_string(r.method))},
            {"master_seed", r.master_seed},
            {"theory", limit_law_json(r.theory)},
            {"ks_statistic", r.ks_statistic},
            {"ks_p_value", r.ks_p_value},
            {"median", r.median},
            {"median_theory", r.median_theory},
            {"rescaled_deficits", r.rescaled_deficits}};
  return dump(j);
}

std::string to_csv(const LimitLawReport& r) {
  std::string out = csv_row({"replication", "stream_index", "m_n", "deficit", "rescaled_deficit",
                             "i", "j", "pairs_examined"});
  for (std::size_t k = 0; k < r.reps.size(); ++k) {
    const auto& rep = r.reps[k];
    out += csv_row({std::to_string(k), std::to_string(rep.stream_index), format_number(rep.m_n),
                    format_number(rep.deficit), format_number(rep.rescaled_deficit),
                    std::to_string(rep.i), std::to_string(rep.j),
                    std::to_string(rep.pairs_examined)});
  }
  return out;
}

std::string to_json(const ExponentReport& r, std::string_view config_json) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"n", p.n},
                   {"mean_deficit", p.mean_deficit},
                   {"std_error", p.std_error},
                   {"mean_pairs_examined", p.mean_pairs_examined}});
  }
  json j = {{"experiment", "exponent"},
            {"config", config_object(config_json)},
            {"mode", std::string(to_string(r.mode))},
            {"a", r.a},
            {"replications", r.replications},
            {"master_seed", r.master_seed},
            {"fitted_exponent", r.fitted_exponent},
            {"exponent_std_error", r.exponent_std_error},
            {"expected", r.expected},
            {"points", std::move(pts)}};
  return dump(j);
}

std::string to_csv(const ExponentReport& r) {
  std::string out = csv_row({"mode", "n", "replication", "deficit"});
  const std::string mode(to_string(r.mode));
  for (const auto& p : r.points) {
    for (std::size_t k = 0; k < p.deficits.size(); ++k) {
      out += csv_row({mode, std::to_string(p.n), std::to_string(k), format_number(p.deficits[k])});
    }
  }
  return out;
}

std::string to_json(const ChenSteinReport& r, std::string_view config_json) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"eps_n", row.eps_n},
                    {"p", row.p},
                    {"q", row.q},
                    {"b1", row.b1},
                    {"b2", row.b2},
                    {"b1_scaled", row.b1_scaled},
                    {"b2_scaled", row.b2_scaled}});
  }
  json j = {{"experiment", "chenstein"},
            {"config", config_object(config_json)},
            {"a", r.a},
            {"t", r.t},
            {"b1_scaled_spread", r.b1_scaled_spread},
            {"b2_scaled_spread", r.b2_scaled_spread},
            {"rows", std::move(rows)}};
  return dump(j);
}

std::string to_csv(const ChenSteinReport& r) {
  std::string out = csv_row({"n", "eps_n", "p", "q", "b1", "b2", "b1_scaled", "b2_scaled"});
  for (const auto& row : r.rows) {
    out += csv_row({std::to_string(row.n), format_number(row.eps_n), format_number(row.p),
                    format_number(row.q), format_number(row.b1), format_number(row.b2),
                    format_number(row.b1_scaled), format_number(row.b2_scaled)});
  }
  return out;
}

std::string csv_body(std::string_view csv) {
  std::size_t pos = 0;
  while (pos < csv.size() && csv[pos] == '#') {
    const auto nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) return {};
    pos = nl + 1;
  }
  return std::string(csv.substr(pos));
}

}  // namespace diamlaw
