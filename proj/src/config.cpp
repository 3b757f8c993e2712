#include "opuc/config.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

struct TomlCursor {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;
};

void skip_ws(TomlCursor& c, bool over_lines) {
  while (c.pos < c.text.size()) {
    char ch = c.text[c.pos];
    if (ch == '#') {
      while (c.pos < c.text.size() && c.text[c.pos] != '\n') ++c.pos;
    } else if (ch == '\n') {
      if (!over_lines) return;
      ++c.line;
      ++c.pos;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++c.pos;
    } else {
      return;
    }
  }
}

json parse_toml_value(TomlCursor& c);

json parse_toml_array(TomlCursor& c) {
  json arr = json::array();
  ++c.pos;  // consume '['
  while (true) {
    skip_ws(c, true);
    if (c.pos >= c.text.size()) fail(c.line, "unterminated array");
    if (c.text[c.pos] == ']') {
      ++c.pos;
      return arr;
    }
    arr.push_back(parse_toml_value(c));
    skip_ws(c, true);
    if (c.pos < c.text.size() && c.text[c.pos] == ',') {
      ++c.pos;
      continue;
    }
    if (c.pos < c.text.size() && c.text[c.pos] == ']') {
      ++c.pos;
      return arr;
    }
    fail(c.line, "expected ',' or ']' in array");
  }
}

json parse_toml_value(TomlCursor& c) {
  skip_ws(c, false);
  if (c.pos >= c.text.size()) fail(c.line, "missing value");
  char ch = c.text[c.pos];
  if (ch == '[') return parse_toml_array(c);
  if (ch == '"') {
    ++c.pos;
    std::string out;
    while (c.pos < c.text.size() && c.text[c.pos] != '"') {
      if (c.text[c.pos] == '\n') fail(c.line, "unterminated string");
      if (c.text[c.pos] == '\\' && c.pos + 1 < c.text.size()) ++c.pos;
      out.push_back(c.text[c.pos++]);
    }
    if (c.pos >= c.text.size()) fail(c.line, "unterminated string");
    ++c.pos;
    return json(out);
  }
  // bare token: bool or number
  std::size_t start = c.pos;
  while (c.pos < c.text.size() && !std::isspace(static_cast<unsigned char>(c.text[c.pos])) &&
         c.text[c.pos] != ',' && c.text[c.pos] != ']' && c.text[c.pos] != '#')
    ++c.pos;
  std::string tok = c.text.substr(start, c.pos - start);
  if (tok == "true") return json(true);
  if (tok == "false") return json(false);
  try {
    std::size_t used = 0;
    if (tok.find_first_of(".eE") == std::string::npos) {
      long long v = std::stoll(tok, &used);
      if (used == tok.size()) return json(v);
    }
    double d = std::stod(tok, &used);
    if (used == tok.size()) return json(d);
  } catch (...) {
  }
  fail(c.line, "cannot parse value '" + tok + "'");
}

}  // namespace

json toml_subset_to_json(const std::string& text) {
  json root = json::object();
  json* current = &root;
  TomlCursor c{text};
  while (true) {
    skip_ws(c, true);
    if (c.pos >= c.text.size()) break;
    char ch = c.text[c.pos];
    if (ch == '[') {
      // table header
      std::size_t end = c.text.find(']', c.pos);
      if (end == std::string::npos) fail(c.line, "unterminated table header");
      std::string name = c.text.substr(c.pos + 1, end - c.pos - 1);
      if (name.empty()) fail(c.line, "empty table name");
      current = &root[name];
      if (current->is_null()) *current = json::object();
      c.pos = end + 1;
      continue;
    }
    // key = value
    std::size_t start = c.pos;
    while (c.pos < c.text.size() && c.text[c.pos] != '=' &&
           c.text[c.pos] != '\n')
      ++c.pos;
    if (c.pos >= c.text.size() || c.text[c.pos] != '=')
      fail(c.line, "expected 'key = value'");
    std::string key = c.text.substr(start, c.pos - start);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
      key.pop_back();
    if (key.empty()) fail(c.line, "empty key");
    ++c.pos;  // '='
    (*current)[key] = parse_toml_value(c);
    skip_ws(c, false);
    if (c.pos < c.text.size() && c.text[c.pos] != '\n' &&
        c.text[c.pos] != '#')
      fail(c.line, "trailing characters after value");
  }
  return root;
}

namespace {

cd json_to_complex(const json& v, const std::string& field) {
  if (v.is_number()) return cd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cd(v[0].get<double>(), v[1].get<double>());
  throw ConfigError("field '" + field + "': expected number or [re, im]");
}

ExperimentKind kind_from_name(const std::string& name) {
  if (name == "zeros") return ExperimentKind::Zeros;
  if (name == "density") return ExperimentKind::Density;
  if (name == "ratio") return ExperimentKind::Ratio;
  if (name == "compare") return ExperimentKind::Compare;
  if (name == "balayage") return ExperimentKind::Balayage;
  if (name == "moments") return ExperimentKind::Moments;
  if (name == "bands") return ExperimentKind::Bands;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

Schedule schedule_from_json(const json& s, double t) {
  if (!s.contains("type"))
    throw ConfigError("schedule: missing 'type'");
  std::string type = s.at("type").get<std::string>();
  if (type == "constant")
    return Schedule::constant(json_to_complex(s.at("alpha"), "schedule.alpha"));
  if (type == "periodic") {
    std::vector<cd> alphas;
    for (const json& a : s.at("alphas"))
      alphas.push_back(json_to_complex(a, "schedule.alphas[]"));
    return Schedule::periodic(std::move(alphas));
  }
  if (type == "power")
    return Schedule::sampled(
        SampledExpression::power(s.at("omega").get<double>()), t);
  if (type == "exp")
    return Schedule::sampled(
        SampledExpression::exponential(
            json_to_complex(s.at("zeta"), "schedule.zeta")),
        t);
  if (type == "sqrt1ms2")
    return Schedule::sampled(SampledExpression::sqrt_one_minus_s2(), t);
  if (type == "sine")
    return Schedule::sampled(SampledExpression::sine(), t);
  if (type == "table_expr") {
    std::vector<std::pair<double, cd>> knots;
    for (const json& row : s.at("knots")) {
      if (!row.is_array() || row.size() != 3)
        throw ConfigError("schedule.knots rows are [s, re, im]");
      knots.push_back({row[0].get<double>(),
                       cd(row[1].get<double>(), row[2].get<double>())});
    }
    return Schedule::sampled(SampledExpression::table(std::move(knots)), t);
  }
  if (type == "table") {
    std::vector<std::pair<std::size_t, std::vector<cd>>> rows;
    for (const json& row : s.at("rows")) {
      if (!row.is_array() || row.size() < 1 || row.size() % 2 == 0)
        throw ConfigError("schedule.rows are [N, re0, im0, re1, im1, ...]");
      std::vector<cd> alphas;
      for (std::size_t i = 1; i + 1 < row.size(); i += 2)
        alphas.push_back(cd(row[i].get<double>(), row[i + 1].get<double>()));
      rows.push_back({row[0].get<std::size_t>(), std::move(alphas)});
    }
    return Schedule::table(std::move(rows));
  }
  throw ConfigError("unknown schedule type '" + type + "'");
}

std::optional<ClosedFormDensity> closed_form_from_json(const json& d,
                                                       double t) {
  if (!d.contains("example")) return std::nullopt;
  std::string ex = d.at("example").get<std::string>();
  if (ex == "power")
    return ClosedFormDensity::power(d.value("omega", 1.0), t);
  if (ex == "exp") return ClosedFormDensity::exponential(d.value("zeta", 0.5), t);
  if (ex == "sqrt") return ClosedFormDensity::sqrt_profile(t);
  if (ex == "sine") return ClosedFormDensity::sine_profile(t);
  throw ConfigError("unknown density example '" + ex + "'");
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Zeros: return "zeros";
    case ExperimentKind::Density: return "density";
    case ExperimentKind::Ratio: return "ratio";
    case ExperimentKind::Compare: return "compare";
    case ExperimentKind::Balayage: return "balayage";
    case ExperimentKind::Moments: return "moments";
    case ExperimentKind::Bands: return "bands";
  }
  return "?";
}

std::string ExperimentConfig::run_id() const {
  std::uint64_t h = fnv1a(echo.dump());
  std::ostringstream os;
  os << std::hex << h;
  std::string hex = os.str();
  while (hex.size() < 16) hex.insert(hex.begin(), '0');
  return hex.substr(0, 12);
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& format) {
  json root;
  if (format == "json") {
    try {
      root = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("json parse: ") + e.what());
    }
  } else if (format == "toml") {
    root = toml_subset_to_json(text);
  } else {
    throw ConfigError("unknown config format '" + format + "'");
  }

  ExperimentConfig cfg;
  try {
    cfg.kind = kind_from_name(root.value("kind", std::string("zeros")));
    cfg.t = root.value("t", 1.0);
    if (!(cfg.t > 0.0)) throw ConfigError("t must be positive");
    if (!root.contains("schedule"))
      throw ConfigError("missing [schedule] table");
    cfg.schedule = schedule_from_json(root.at("schedule"), cfg.t);

    cfg.betas.clear();
    if (root.contains("betas")) {
      for (const json& b : root.at("betas"))
        cfg.betas.push_back(json_to_complex(b, "betas[]"));
    } else if (root.contains("beta")) {
      cfg.betas.push_back(json_to_complex(root.at("beta"), "beta"));
    } else {
      cfg.betas.push_back(cd(1.0));
    }
    for (const cd& b : cfg.betas)
      if (std::abs(std::abs(b) - 1.0) > 1e-12)
        throw ConfigError("beta entries must be unimodular");

    cfg.ladder.clear();
    if (root.contains("ladder")) {
      for (const json& n : root.at("ladder"))
        cfg.ladder.push_back(n.get<std::size_t>());
    } else {
      cfg.ladder = {200};
    }
    if (cfg.ladder.empty()) throw ConfigError("ladder must be nonempty");

    cfg.out_dir = root.value("out", std::string("out"));
    cfg.ks_tolerance = root.value("ks_tolerance", 0.05);
    cfg.moment_count = root.value("moments", 20);
    cfg.fejer_order = root.value("fejer_order", 256);
    cfg.seedless = root.value("seedless", false);

    if (root.contains("ratio")) {
      const json& r = root.at("ratio");
      for (const json& k : r.value("kinds", json::array()))
        cfg.ratio_kinds.push_back(ratio_kind_from_name(k.get<std::string>()));
      for (const json& p : r.value("probes", json::array()))
        cfg.probes.push_back(json_to_complex(p, "ratio.probes[]"));
    }
    if (cfg.ratio_kinds.empty())
      cfg.ratio_kinds = {RatioKind::PopucStep};
    if (cfg.probes.empty()) cfg.probes = {cd(2.0, 0.0), cd(0.3, 0.0)};

    if (root.contains("density"))
      cfg.closed_form = closed_form_from_json(root.at("density"), cfg.t);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field: ") + e.what());
  }

  cfg.echo = root;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string format =
      path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json"
                                                                  : "toml";
  return parse_config_text(ss.str(), format);
}

}  // namespace opuc
