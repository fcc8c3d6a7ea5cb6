#include "shadow_wlo/config.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace shadow_wlo {

using nlohmann::json;

namespace {

const std::vector<std::string> kOutputs{"wlo", "shadow", "compare", "selfcheck"};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int get_int(const json& obj, const std::string& key, const std::string& path, std::optional<int> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) throw ConfigError(join(path, key), "missing");
    return *fallback;
  }
  if (!it->is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  const auto v = it->get<std::int64_t>();
  if (v < -1000000 || v > 1000000) throw ConfigError(join(path, key), "out of range");
  return static_cast<int>(v);
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

json sum_json(const SumResult& r) {
  return json{{"value", complex_json(r.value)},
              {"terms_total", r.terms},
              {"terms_skipped_singular", r.skipped_singular},
              {"empty_label_set", r.empty_label_set}};
}

const char* mode_name(Mode m) { return m == Mode::abstract ? "abstract" : "embedded"; }

}  // namespace

bool JobConfig::wants(const std::string& what) const {
  return std::find(outputs.begin(), outputs.end(), what) != outputs.end();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

JobConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  require(j.is_object(), "", "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known{"group", "level", "genus", "mode", "N", "refinement", "link", "outputs"};
    require(std::find(known.begin(), known.end(), key) != known.end(), key, "unknown field");
  }

  JobConfig c;
  if (j.contains("group")) {
    require(j["group"].is_string(), "group", "expected a string");
    c.group = j["group"].get<std::string>();
  }
  std::optional<LieData> lie;
  try {
    lie = LieData::from_label(c.group);
  } catch (const std::exception& e) {
    throw ConfigError("group", e.what());
  }
  c.level = get_int(j, "level", "", std::nullopt);
  require(c.level >= 1, "level", "must be >= 1");
  c.genus = get_int(j, "genus", "", 0);
  require(c.genus >= 0, "genus", "must be >= 0");
  c.N = get_int(j, "N", "", 4);
  require(c.N >= 2, "N", "must be >= 2");
  c.refinement = get_int(j, "refinement", "", 1);
  require(c.refinement >= 1, "refinement", "must be >= 1");
  if (j.contains("mode")) {
    require(j["mode"].is_string(), "mode", "expected a string");
    const auto m = j["mode"].get<std::string>();
    require(m == "abstract" || m == "embedded", "mode", "expected \"abstract\" or \"embedded\"");
    c.mode = m == "abstract" ? Mode::abstract : Mode::embedded;
  }
  if (c.mode == Mode::embedded && c.genus >= 1)
    require(c.refinement >= 2, "refinement", "must be >= 2 for genus >= 1");

  c.link.genus = c.genus;
  if (j.contains("link")) {
    const auto& arr = j["link"];
    require(arr.is_array(), "link", "expected an array of ribbons");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = index("link", i);
      const auto& r = arr[i];
      require(r.is_object(), p, "expected an object");
      for (const auto& [key, _] : r.items())
        require(key == "color" || key == "winding" || key == "sign" || key == "parent", join(p, key), "unknown field");
      RibbonSpec spec;
      require(r.contains("color"), join(p, "color"), "missing");
      const auto& col = r["color"];
      require(col.is_array(), join(p, "color"), "expected an array");
      require(static_cast<int>(col.size()) == lie->rank(), join(p, "color"),
              "expected " + std::to_string(lie->rank()) + " coordinates");
      for (std::size_t a = 0; a < col.size(); ++a) {
        const std::string pa = index(join(p, "color"), a);
        require(col[a].is_number_integer(), pa, "expected an integer");
        const auto v = col[a].get<std::int64_t>();
        require(v >= 0, pa, "must be nonnegative");
        require(v <= 64, pa, "too large");
        spec.color.coords.push_back(v);
      }
      spec.winding = get_int(r, "winding", p, 0);
      spec.sign = get_int(r, "sign", p, 1);
      require(spec.sign == 1 || spec.sign == -1, join(p, "sign"), "must be 1 or -1");
      spec.parent = get_int(r, "parent", p, -1);
      require(spec.parent >= -1 && spec.parent < static_cast<int>(arr.size()) && spec.parent != static_cast<int>(i),
              join(p, "parent"), "must be -1 or the index of another ribbon");
      c.link.ribbons.push_back(std::move(spec));
    }
    try {
      c.link.validate(*lie);
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      const auto colon = msg.find(':');
      throw ConfigError(colon == std::string::npos ? "link" : msg.substr(0, colon),
                        colon == std::string::npos ? msg : msg.substr(colon + 2));
    }
    if (c.mode == Mode::embedded)
      for (int i = 0; i < c.link.size(); ++i)
        require(c.link.children(i).size() <= 1, index("link", i),
                "embedded mode needs nested chains; this ribbon encloses several others");
  }
  if (j.contains("outputs")) {
    const auto& arr = j["outputs"];
    require(arr.is_array(), "outputs", "expected an array");
    c.outputs.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      require(arr[i].is_string(), index("outputs", i), "expected a string");
      const auto s = arr[i].get<std::string>();
      require(std::find(kOutputs.begin(), kOutputs.end(), s) != kOutputs.end(), index("outputs", i),
              "expected one of wlo, shadow, compare, selfcheck");
      c.outputs.push_back(s);
    }
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json config_to_json(const JobConfig& c) {
  json link = json::array();
  for (const auto& r : c.link.ribbons)
    link.push_back({{"color", r.color.coords}, {"winding", r.winding}, {"sign", r.sign}, {"parent", r.parent}});
  return json{{"group", c.group}, {"level", c.level},           {"genus", c.genus}, {"mode", mode_name(c.mode)},
              {"N", c.N},         {"refinement", c.refinement}, {"link", link},     {"outputs", c.outputs}};
}

json selfcheck_report(const std::vector<SuiteResult>& suites) {
  json out = json::array();
  for (const auto& s : suites) out.push_back({{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  return out;
}

JobOutcome run_job(const JobConfig& c, const RunOptions& opt) {
  const LieData lie = LieData::from_label(c.group);
  JobOutcome out;
  json results = json::object();
  json warnings = json::array();
  const int k = c.level;
  if (level_labels(lie, k).empty())
    warnings.push_back({{"code", "empty_label_set"},
                        {"message", "level below the dual Coxeter number; every state sum is zero"}});

  if (c.wants("compare")) {
    CompareOptions co;
    co.mode = c.mode;
    co.refinement = c.refinement;
    co.N = c.N;
    co.threads = opt.threads;
    co.tolerance = opt.tolerance;
    const auto rep = compare_theorem(lie, k, c.link, co);
    results["compare"] = {{"wlo_ratio", complex_json(rep.wlo_ratio)},
                          {"shadow_ratio", complex_json(rep.shadow_ratio)},
                          {"abs_diff", std::abs(rep.wlo_ratio - rep.shadow_ratio)},
                          {"rel_diff", rep.ratio_diff},
                          {"normalization_rel_diff", rep.absolute_diff},
                          {"tolerance", opt.tolerance},
                          {"pass", rep.pass}};
    if (c.wants("wlo")) {
      results["wlo"] = sum_json(rep.wlo_link);
      results["wlo_empty"] = sum_json(rep.wlo_empty);
    }
    if (c.wants("shadow")) {
      results["shadow"] = sum_json(rep.shadow_link);
      results["shadow_empty"] = sum_json(rep.shadow_empty);
    }
    out.ok = out.ok && rep.pass;
  } else {
    if (c.wants("wlo")) {
      const auto src = make_terms(lie, k, c.link, c.mode, c.refinement, c.N);
      results["wlo"] = sum_json(wlo_sum(*src, opt.threads));
    }
    if (c.wants("shadow")) results["shadow"] = sum_json(shadow_invariant(lie, k, abstract_geometry(c.link), opt.threads));
  }

  if (c.mode == Mode::embedded) {
    const auto emb = embed_link(c.link, c.refinement, c.N);
    const auto fr = check_framing(emb);
    const auto cov = embedded_covariance_check(emb, lie);
    const auto agree = mode_agreement(lie, k, c.link, c.refinement, c.N);
    const bool kernel = emb.surface.kernel_check_b0(emb.sigma0);
    results["embedded"] = {
        {"framing", {{"pass", fr.ok()}, {"detail", fr.detail}}},
        {"covariance", {{"pass", cov.ok}, {"max_abs", cov.max_abs}, {"pairs", cov.pairs}}},
        {"mode_agreement", {{"pass", agree.ok}, {"terms", agree.terms}, {"detail", agree.first_difference}}},
        {"kernel_check", kernel}};
    out.ok = out.ok && fr.ok() && cov.ok && agree.ok && kernel;
  }

  if (c.wants("selfcheck")) {
    SelfcheckOptions so;
    so.threads = opt.threads;
    const auto suites = run_selfcheck(so);
    results["selfcheck"] = selfcheck_report(suites);
    out.ok = out.ok && std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.pass; });
  }

  out.report = json{{"config", config_to_json(c)}, {"results", results}, {"warnings", warnings}, {"ok", out.ok}};
  return out;
}

}  // namespace shadow_wlo
