#include "fiscmon/cli_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiscmon/simulation.hpp"

namespace fiscmon::cli {

namespace {

using KeyTable = std::vector<std::pair<std::string, std::vector<std::string>>>;

const KeyTable kKeys = {
    {"command", {}},
    {"format", {"output_format"}},
    {"output", {"output_path"}},
    {"beta", {}},
    {"y", {}},
    {"g", {}},
    {"b_star", {"bstar"}},
    {"pi_star", {"pistar"}},
    {"q", {}},
    {"q_pi", {"qpi"}},
    {"q_b", {"qb"}},
    {"mu_R", {"mur", "mu_r"}},
    {"mu_s", {"mus"}},
    {"f_pi", {"fpi"}},
    {"g_b", {"gb"}},
    {"sigma_R", {"sigmar", "sigma_r"}},
    {"sigma_s", {"sigmas"}},
    {"rho_R", {"rhor", "rho_r"}},
    {"rho_s", {"rhos"}},
    {"policy", {}},
    {"horizon", {}},
    {"b0_dev", {"b0"}},
    {"seed", {}},
    {"variant", {}},
    {"tol", {}},
    {"f_min", {}},
    {"f_max", {}},
    {"g_min", {}},
    {"g_max", {}},
    {"n_f", {}},
    {"n_g", {}},
    {"mu_s_grid", {"mus_grid"}},
};

// Keys whose values are not numbers.
const std::set<std::string> kTextKeys = {"command", "format", "output", "policy",
                                         "variant"};

const std::map<std::string, Command> kCommands = {
    {"steady", Command::Steady}, {"system", Command::System},
    {"classify", Command::Classify}, {"grid", Command::Grid},
    {"ramsey", Command::Ramsey}, {"sweep", Command::Sweep},
    {"simulate", Command::Simulate}};

std::string command_name(Command c) {
  for (const auto& [name, value] : kCommands)
    if (value == c) return name;
  return "?";
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || errno == ERANGE || end != text.c_str() + text.size())
    throw ConfigError("value for '" + key + "' is not a number: '" + text + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || errno == ERANGE || end != text.c_str() + text.size())
    throw ConfigError("value for '" + key + "' is not an integer: '" + text + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  if (text.empty() || text[0] == '-')
    throw ConfigError("seed must be a non-negative integer: '" + text + "'");
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno == ERANGE || end != text.c_str() + text.size())
    throw ConfigError("seed must be a non-negative integer: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::vector<std::string> required_keys(Command command,
                                       const std::map<std::string, std::string>& kv) {
  switch (command) {
    case Command::Steady: return {"beta", "y", "g", "b_star"};
    case Command::System: return {"beta", "y", "g", "b_star", "variant"};
    case Command::Classify: return {"beta", "f_pi", "g_b"};
    case Command::Grid:
      return {"beta", "f_min", "f_max", "g_min", "g_max", "n_f", "n_g"};
    case Command::Ramsey: return {"beta", "q", "q_pi", "q_b", "mu_R", "mu_s"};
    case Command::Sweep: return {"beta", "q", "q_pi", "q_b", "mu_R", "mu_s_grid"};
    case Command::Simulate: {
      std::vector<std::string> keys = {"beta", "policy", "horizon", "b0_dev"};
      const auto it = kv.find("policy");
      if (it != kv.end() && it->second == "ramsey")
        keys.insert(keys.end(), {"q", "q_pi", "q_b", "mu_R", "mu_s"});
      else
        keys.insert(keys.end(), {"f_pi", "g_b"});
      return keys;
    }
  }
  return {};
}

void append(std::vector<std::string>& to, std::vector<std::string> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()),
            std::make_move_iterator(from.end()));
}

void validate_config(const RunConfig& c) {
  std::vector<std::string> bad = violations(c.model);
  const bool needs_prefs =
      c.command == Command::Ramsey || c.command == Command::Sweep ||
      (c.command == Command::Simulate && c.policy == SimPolicy::Ramsey);
  if (needs_prefs) append(bad, violations(c.prefs));
  append(bad, violations(c.rule));
  if (!(c.tol >= 0) || !std::isfinite(c.tol)) bad.emplace_back("tol must be finite and >= 0");
  if (c.command == Command::Simulate) {
    if (c.horizon < 1) bad.emplace_back("horizon must be >= 1");
    if (!std::isfinite(c.b0_dev)) bad.emplace_back("b0_dev must be finite");
    if (c.policy == SimPolicy::Ramsey && c.variant != Variant::Linear)
      bad.emplace_back("Ramsey paths are computed in the linear variant only");
  }
  if (c.variant == Variant::LogLinear &&
      (c.command == Command::System || c.command == Command::Simulate) &&
      !(c.model.b_star > 0))
    bad.emplace_back("log-linear system needs b_star > 0; use the linear variant");
  if (!bad.empty()) throw InvalidParameter(std::move(bad));

  if (c.command == Command::Grid) {
    if (c.n_f < 2 || c.n_g < 2) throw InvalidRange("n_f and n_g must be >= 2");
    if (!(c.f_range.lo < c.f_range.hi) || !(c.g_range.lo < c.g_range.hi))
      throw InvalidRange("grid intervals must satisfy min < max");
  }
  if (c.command == Command::Sweep) {
    if (c.mu_s_grid.empty()) throw InvalidRange("mu_s_grid is empty");
    for (std::size_t i = 0; i < c.mu_s_grid.size(); ++i) {
      if (!(c.mu_s_grid[i] > 0)) throw InvalidRange("mu_s_grid values must be > 0");
      if (i > 0 && !(c.mu_s_grid[i] > c.mu_s_grid[i - 1]))
        throw InvalidRange("mu_s_grid must be strictly ascending");
    }
  }
}

void apply(RunConfig& c, const std::string& key, const std::string& v) {
  auto num = [&] { return parse_double(key, v); };
  if (key == "command") {
    const auto it = kCommands.find(v);
    if (it == kCommands.end()) throw ConfigError("unknown command '" + v + "'");
    c.command = it->second;
  } else if (key == "format") {
    if (v == "csv") c.output_format = OutputFormat::Csv;
    else if (v == "json") c.output_format = OutputFormat::Json;
    else throw ConfigError("format must be csv or json, got '" + v + "'");
  } else if (key == "output") {
    c.output_path = v;
  } else if (key == "policy") {
    if (v == "ramsey") c.policy = SimPolicy::Ramsey;
    else if (v == "adhoc") c.policy = SimPolicy::AdHoc;
    else throw ConfigError("policy must be ramsey or adhoc, got '" + v + "'");
  } else if (key == "variant") {
    if (v == "linear") c.variant = Variant::Linear;
    else if (v == "loglinear") c.variant = Variant::LogLinear;
    else throw ConfigError("variant must be linear or loglinear, got '" + v + "'");
  } else if (key == "beta") c.model.beta = num();
  else if (key == "y") c.model.y = num();
  else if (key == "g") c.model.g = num();
  else if (key == "b_star") c.model.b_star = num();
  else if (key == "pi_star") c.model.pi_star = num();
  else if (key == "q") c.model.q = num();
  else if (key == "q_pi") c.prefs.q_pi = num();
  else if (key == "q_b") c.prefs.q_b = num();
  else if (key == "mu_R") c.prefs.mu_R = num();
  else if (key == "mu_s") c.prefs.mu_s = num();
  else if (key == "f_pi") c.rule.f_pi = num();
  else if (key == "g_b") c.rule.g_b = num();
  else if (key == "sigma_R") c.rule.sigma_R = num();
  else if (key == "sigma_s") c.rule.sigma_s = num();
  else if (key == "rho_R") c.rule.rho_R = num();
  else if (key == "rho_s") c.rule.rho_s = num();
  else if (key == "horizon") c.horizon = parse_long(key, v);
  else if (key == "b0_dev") c.b0_dev = num();
  else if (key == "seed") c.seed = parse_seed(v);
  else if (key == "tol") c.tol = num();
  else if (key == "f_min") c.f_range.lo = num();
  else if (key == "f_max") c.f_range.hi = num();
  else if (key == "g_min") c.g_range.lo = num();
  else if (key == "g_max") c.g_range.hi = num();
  else if (key == "n_f") c.n_f = parse_long(key, v);
  else if (key == "n_g") c.n_g = parse_long(key, v);
  else if (key == "mu_s_grid") c.mu_s_grid = parse_list(key, v);
}

/// (key, text) for every key, in table order; unset optional keys skipped.
std::vector<std::pair<std::string, std::string>> entries(const RunConfig& c) {
  const auto d = format_double;
  std::string grid;
  for (std::size_t i = 0; i < c.mu_s_grid.size(); ++i)
    grid += (i ? "," : "") + d(c.mu_s_grid[i]);
  std::vector<std::pair<std::string, std::string>> out = {
      {"command", command_name(c.command)},
      {"format", c.output_format == OutputFormat::Csv ? "csv" : "json"},
      {"output", c.output_path},
      {"beta", d(c.model.beta)},
      {"y", d(c.model.y)},
      {"g", d(c.model.g)},
      {"b_star", d(c.model.b_star)},
      {"pi_star", d(c.model.pi_star)},
      {"q", d(c.model.q)},
      {"q_pi", d(c.prefs.q_pi)},
      {"q_b", d(c.prefs.q_b)},
      {"mu_R", d(c.prefs.mu_R)},
      {"mu_s", d(c.prefs.mu_s)},
      {"f_pi", d(c.rule.f_pi)},
      {"g_b", d(c.rule.g_b)},
      {"sigma_R", d(c.rule.sigma_R)},
      {"sigma_s", d(c.rule.sigma_s)},
      {"rho_R", d(c.rule.rho_R)},
      {"rho_s", d(c.rule.rho_s)},
      {"policy", c.policy == SimPolicy::Ramsey ? "ramsey" : "adhoc"},
      {"horizon", std::to_string(c.horizon)},
      {"b0_dev", d(c.b0_dev)},
      {"seed", std::to_string(c.seed)},
      {"variant", std::string(to_string(c.variant))},
      {"tol", d(c.tol)},
      {"f_min", d(c.f_range.lo)},
      {"f_max", d(c.f_range.hi)},
      {"g_min", d(c.g_range.lo)},
      {"g_max", d(c.g_range.hi)},
      {"n_f", std::to_string(c.n_f)},
      {"n_g", std::to_string(c.n_g)},
      {"mu_s_grid", grid},
  };
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second.empty(); }),
            out.end());
  return out;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

std::string json_number(double v) {
  return std::isfinite(v) ? format_double(v) : "null";
}

std::string json_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return json_number(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const {
      return nlohmann::json(v).dump();
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

Table regime_table(const std::vector<RegimeCell<double>>& cells) {
  Table t{{"f_pi", "g_b", "label", "abs_lambda_pi", "abs_lambda_b"}, {}};
  for (const auto& c : cells)
    t.rows.push_back({c.f_pi, c.g_b, std::string(to_string(c.regime.label)),
                      c.regime.abs_lambda_pi, c.regime.abs_lambda_b});
  return t;
}

Table path_table(const Pathd& path) {
  Table t{{"t", "pi_dev", "b_dev", "R_dev", "s_dev", "fisher_residual",
           "budget_residual"},
          {}};
  for (const auto& r : path.rows)
    t.rows.push_back({r.t, r.pi_dev, r.b_dev, r.R_dev, r.s_dev, r.fisher_residual,
                      r.budget_residual});
  return t;
}

void emit_warnings(std::ostream& diag, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) diag << "warning: " << w << "\n";
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  auto same_model = [](const ModelParamsd& a, const ModelParamsd& b) {
    return a.beta == b.beta && a.y == b.y && a.g == b.g && a.b_star == b.b_star &&
           a.pi_star == b.pi_star && a.q == b.q;
  };
  auto same_prefs = [](const PolicyPreferencesd& a, const PolicyPreferencesd& b) {
    return a.q_pi == b.q_pi && a.q_b == b.q_b && a.mu_R == b.mu_R && a.mu_s == b.mu_s;
  };
  auto same_rule = [](const AdHocRuled& a, const AdHocRuled& b) {
    return a.f_pi == b.f_pi && a.g_b == b.g_b && a.sigma_R == b.sigma_R &&
           a.sigma_s == b.sigma_s && a.rho_R == b.rho_R && a.rho_s == b.rho_s;
  };
  return command == o.command && output_format == o.output_format &&
         output_path == o.output_path && same_model(model, o.model) &&
         same_prefs(prefs, o.prefs) && same_rule(rule, o.rule) &&
         policy == o.policy && horizon == o.horizon && b0_dev == o.b0_dev &&
         seed == o.seed && variant == o.variant && tol == o.tol &&
         f_range.lo == o.f_range.lo && f_range.hi == o.f_range.hi &&
         g_range.lo == o.g_range.lo && g_range.hi == o.g_range.hi &&
         n_f == o.n_f && n_g == o.n_g && mu_s_grid == o.mu_s_grid;
}

const KeyTable& key_table() { return kKeys; }

std::optional<std::string> canonical_key(const std::string& name) {
  for (const auto& [key, aliases] : kKeys) {
    if (key == name) return key;
    if (std::find(aliases.begin(), aliases.end(), name) != aliases.end()) return key;
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<Assignment> read_assignments(const std::string& text) {
  std::vector<Assignment> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string name = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (name.empty())
      throw ConfigError("line " + std::to_string(line) + ": missing key");
    if (value.empty())
      throw ConfigError("line " + std::to_string(line) + ": missing value for '" +
                        name + "'");
    const auto key = canonical_key(name);
    if (!key)
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + name + "'");
    out.push_back({*key, value, line});
  }
  return out;
}

ParsedConfig parse_config(const std::optional<std::string>& file_text,
                          const std::vector<std::pair<std::string, std::string>>& flags) {
  ParsedConfig parsed;
  std::map<std::string, std::string> kv;
  std::map<std::string, int> seen_at;
  if (file_text) {
    for (const auto& a : read_assignments(*file_text)) {
      if (const auto it = seen_at.find(a.key); it != seen_at.end())
        parsed.warnings.push_back("line " + std::to_string(a.line) + ": key '" + a.key +
                                  "' repeats line " + std::to_string(it->second) +
                                  "; the last value wins");
      seen_at[a.key] = a.line;
      kv[a.key] = a.value;
    }
  }
  for (const auto& [name, value] : flags) {
    const auto key = canonical_key(name);
    if (!key) throw ConfigError("unknown flag '--" + name + "'");
    kv[*key] = trim(value);
  }

  const auto cmd = kv.find("command");
  if (cmd == kv.end()) throw ConfigError("missing required key: command");
  RunConfig& c = parsed.config;
  apply(c, "command", cmd->second);

  std::vector<std::string> missing;
  for (const auto& key : required_keys(c.command, kv))
    if (!kv.count(key)) missing.push_back(key);
  if (!missing.empty()) {
    std::string msg = "missing required keys for '" + command_name(c.command) + "':";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }
  for (const auto& [key, value] : kv) apply(c, key, value);
  validate_config(c);
  return parsed;
}

std::string serialize(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : entries(config)) out += key + " = " + value + "\n";
  return out;
}

void write_csv(std::ostream& out, const Table& table, const RunConfig& config) {
  for (const auto& [key, value] : entries(config))
    out << "# " << key << " = " << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table, const RunConfig& config) {
  out << "{\n  \"meta\": {";
  const auto meta = entries(config);
  for (std::size_t i = 0; i < meta.size(); ++i) {
    const auto& [key, value] = meta[i];
    out << (i ? "," : "") << "\n    " << nlohmann::json(key).dump() << ": ";
    if (key == "mu_s_grid") {
      out << "[";
      for (std::size_t j = 0; j < config.mu_s_grid.size(); ++j)
        out << (j ? ", " : "") << json_number(config.mu_s_grid[j]);
      out << "]";
    } else if (kTextKeys.count(key)) {
      out << nlohmann::json(value).dump();
    } else {
      out << value;
    }
  }
  out << "\n  },\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? "," : "") << "\n    {";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? ", " : "") << nlohmann::json(table.columns[i]).dump() << ": "
          << json_cell(table.rows[r][i]);
    out << "}";
  }
  out << "\n  ]\n}\n";
}

Table compute_table(const RunConfig& c, std::ostream& diag) {
  switch (c.command) {
    case Command::Steady: {
      const auto ss = compute_steady_state(c.model);
      return {{"R_star", "tau_star", "s_star", "c", "r"},
              {{ss.R_star, ss.tau_star, ss.s_star, ss.c, ss.r}}};
    }
    case Command::System: {
      const auto s = build_linear_system(c.model, c.variant);
      return {{"variant", "a_pi", "a_pib", "a_bpi", "a_b", "b_piR", "b_pis", "b_bR",
               "b_bs"},
              {{std::string(to_string(s.variant)), s.a_pi, s.a_pib, s.a_bpi, s.a_b,
                s.b_piR, s.b_pis, s.b_bR, s.b_bs}}};
    }
    case Command::Classify: {
      const auto cls = classify_regime(c.model, c.rule, c.tol);
      return regime_table({{c.rule.f_pi, c.rule.g_b, cls}});
    }
    case Command::Grid: {
      const auto grid = regime_grid(c.model, c.f_range, c.g_range,
                                    static_cast<std::size_t>(c.n_f),
                                    static_cast<std::size_t>(c.n_g), c.tol);
      return regime_table(grid.cells);
    }
    case Command::Ramsey: {
      const auto s = ramsey_solution(c.model, c.prefs);
      emit_warnings(diag, s.warnings);
      return {{"p_pi", "p_pib", "p_b", "lambda_pi_opt", "lambda_b_opt", "lambda_2",
               "s_sum", "f_opt", "g_b_opt", "rho_R_opt", "sigma2_R_opt", "pi0_anchor",
               "pi0_indeterminate", "degenerate", "loss_at_b0", "oracle_p",
               "oracle_lambda_cl", "oracle_p_residual", "oracle_lambda_residual",
               "oracle_iterations"},
              {{s.p_pi, s.p_pib, s.p_b, s.lambda_pi_opt, s.lambda_b_opt, s.lambda_2,
                s.s_sum, s.f_opt, s.g_b_opt, s.rho_R_opt, s.sigma2_R_opt,
                s.pi0_anchor, s.pi0_indeterminate, s.degenerate,
                loss_value(s, c.b0_dev, s.pi0_anchor), s.oracle_p, s.oracle_lambda_cl,
                s.oracle_p_residual, s.oracle_lambda_residual, s.oracle_iterations}}};
    }
    case Command::Sweep: {
      Table t{{"mu_s", "lambda_b_opt", "g_b_opt", "p_b"}, {}};
      for (const auto& p : persistence_sweep(c.prefs, c.model, c.mu_s_grid))
        t.rows.push_back({p.mu_s, p.lambda_b_opt, p.g_b_opt, p.p_b});
      return t;
    }
    case Command::Simulate: {
      Pathd path;
      if (c.policy == SimPolicy::Ramsey) {
        const auto s = ramsey_solution(c.model, c.prefs);
        emit_warnings(diag, s.warnings);
        path = simulate_ramsey(s, c.model, c.b0_dev, c.horizon);
      } else {
        const auto shocks = draw_shocks(c.rule.sigma_R, c.rule.sigma_s, c.rule.rho_R,
                                        c.rule.rho_s, c.horizon, c.seed);
        path = simulate_adhoc(c.model, c.rule, shocks, c.b0_dev, c.variant, c.tol);
      }
      emit_warnings(diag, path.warnings);
      return path_table(path);
    }
  }
  throw Error("unhandled command");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const InvalidParameter*>(&e)) return 2;
  if (dynamic_cast<const InvalidRange*>(&e)) return 2;
  if (dynamic_cast<const AnchorViolation*>(&e)) return 2;
  if (dynamic_cast<const UnsupportedRegime*>(&e)) return 3;
  if (dynamic_cast<const CrossCheckFailure*>(&e)) return 4;
  if (dynamic_cast<const NoConvergence*>(&e)) return 4;
  return 1;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    const Table table = compute_table(config, diag);
    auto write = [&](std::ostream& os) {
      if (config.output_format == OutputFormat::Csv) write_csv(os, table, config);
      else write_json(os, table, config);
    };
    if (config.output_path.empty()) {
      write(out);
      return 0;
    }
    std::filesystem::path target(config.output_path);
    if (const char* dir = std::getenv("FISCMON_OUTPUT_DIR");
        dir != nullptr && *dir != '\0' && target.is_relative())
      target = std::filesystem::path(dir) / target;
    std::ofstream file(target, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open output file '" + target.string() + "'");
    write(file);
    file.close();
    if (!file) throw Error("failed writing '" + target.string() + "'");
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& diag) {
  CLI::App app{"Monetary-fiscal policy analysis: steady state, regime "
               "classification, Ramsey policy and simulated paths."};
  std::string config_path;
  app.add_option("--config", config_path, "Configuration file of 'key = value' lines");

  std::vector<std::pair<std::string, std::string>> values(kKeys.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    const auto& [key, aliases] = kKeys[i];
    std::string names = "--" + key;
    for (const auto& a : aliases) names += ",--" + a;
    values[i].first = key;
    options.push_back(app.add_option(names, values[i].second));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, diag);
    return code == 0 ? 0 : 1;
  }

  try {
    std::optional<std::string> text;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::vector<std::pair<std::string, std::string>> flags;
    for (std::size_t i = 0; i < kKeys.size(); ++i)
      if (options[i]->count() > 0) flags.push_back(values[i]);
    const auto parsed = parse_config(text, flags);
    emit_warnings(diag, parsed.warnings);
    return run(parsed.config, out, diag);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace fiscmon::cli
