#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "ellt/affine/affine.hpp"
#include "ellt/ea/eatheory.hpp"
#include "ellt/errors.hpp"
#include "ellt/sheaf/sheafside.hpp"
#include "ellt/util/atomic_file.hpp"

namespace ellt::cli {

using nlohmann::ordered_json;
using curve::TorsionDivisor;
using exact::Rational;
using tmodel::Representation;

namespace {

// ---- parameter extraction; every failure is a ConfigError

long int_param(const ordered_json& p, const std::string& key, std::optional<long> fallback = {}) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("params." + key + " is required");
  }
  if (!p[key].is_number_integer()) throw ConfigError("params." + key + " must be an integer");
  return p[key].get<long>();
}

long class_key(const std::string& k, const std::string& where) {
  std::size_t used = 0;
  long s = 0;
  try {
    s = std::stol(k, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != k.size() || s < 1) throw ConfigError(where + ": key '" + k + "' must be a positive integer");
  return s;
}

// {n: a_n}; "e" holds the trivial summand.
Representation rep_param(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object {n: a_n}");
  Representation r;
  for (auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw ConfigError(where + "." + k + " must be an integer");
    if (k == "e") {
      r.fixed_part = v.get<long>();
      continue;
    }
    const long n = class_key(k, where);
    if (v.get<long>() != 0) r.multiplicities[n] = v.get<long>();
  }
  return r;
}

TorsionDivisor divisor_param(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object {s: n_s}");
  TorsionDivisor d;
  for (auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw ConfigError(where + "." + k + " must be an integer");
    d += TorsionDivisor::point(class_key(k, where), v.get<long>());
  }
  return d;
}

TorsionDivisor divisor_param(const ordered_json& p, const std::string& key, bool required) {
  if (!p.contains(key)) {
    if (required) throw ConfigError("params." + key + " is required");
    return {};
  }
  return divisor_param(p[key], "params." + key);
}

std::set<long> pi_param(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of orders");
  std::set<long> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long>() < 1) throw ConfigError(where + " entries must be positive integers");
    out.insert(v.get<long>());
  }
  return out;
}

std::set<long> pi_field(const ordered_json& p, const std::string& key) {
  if (!p.contains(key)) return {};
  return pi_param(p[key], "params." + key);
}

std::optional<tmodel::Caps> caps_param(const ordered_json& p) {
  if (!p.contains("caps")) return std::nullopt;
  const auto& c = p["caps"];
  if (!c.is_object()) throw ConfigError("params.caps must be an object");
  for (auto& [k, v] : c.items())
    if (k != "bound" && k != "step" && k != "span") throw ConfigError("unknown key '" + k + "' in params.caps");
  tmodel::Caps caps;
  if (!c.contains("bound")) throw ConfigError("params.caps.bound is required");
  caps.bound = divisor_param(c["bound"], "params.caps.bound");
  caps.step = c.contains("step") ? divisor_param(c["step"], "params.caps.step") : TorsionDivisor::identity();
  caps.span = c.contains("span") ? int_param(c, "span") : 0;
  return caps;
}

std::pair<long, long> range_param(const ordered_json& p) {
  if (!p.contains("range")) throw ConfigError("params.range is required");
  const auto& r = p["range"];
  if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
    throw ConfigError("params.range must be [lo, hi]");
  const long lo = r[0].get<long>(), hi = r[1].get<long>();
  if (lo > hi) throw ConfigError("params.range has lo > hi");
  return {lo, hi};
}

ordered_json matrix_json(const exact::Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(exact::to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json poly_triple(const curve::FuncElt& f) {
  return {{"u", exact::to_string(f.u())}, {"v", exact::to_string(f.v())}, {"d", exact::to_string(f.d())}};
}

// ---- CSV for dimension tables

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string csv_table(const std::vector<std::string>& header, const ordered_json& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& v = row.at(header[i]);
      os << (i ? "," : "") << csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
    }
    os << "\n";
  }
  return os.str();
}

// ---- commands

struct Context {
  const JobConfig& cfg;
  std::shared_ptr<curve::CycCache> cache;
  std::optional<ea::EATheory> theory;

  const ea::EATheory& th() {
    if (!theory) theory.emplace(cache);
    return *theory;
  }
};

ordered_json cmd_dims(Context& cx, bool& csv_ok) {
  csv_ok = true;
  const auto& p = cx.cfg.params;
  if (!p.contains("W")) throw ConfigError("params.W is required");
  const bool basis = p.contains("basis") && p["basis"].is_boolean() && p["basis"].get<bool>();
  if (p.contains("basis") && !p["basis"].is_boolean()) throw ConfigError("params.basis must be a boolean");
  const auto caps = caps_param(p);
  auto one = [&](const ordered_json& wj, const std::string& where) {
    const Representation w = rep_param(wj, where);
    const ea::SphereHomology h = ea::sphere_homology(cx.th(), w, caps, basis);
    const ea::SphereCohomology e = ea::sphere_cohomology(cx.th(), w);
    ordered_json row = {{"W", tmodel::to_string(w)},
                        {"D", tmodel::to_json(h.divisor)},
                        {"weight", h.weight},
                        {"h0", h.h0_dim},
                        {"h1", h.h1_dim},
                        {"e0", e.e0_dim},
                        {"e1", e.e1_dim},
                        {"certified", h.stable.certified},
                        {"caps", tmodel::to_json(h.stable.caps)}};
    if (basis) {
      ordered_json b = ordered_json::array();
      for (const auto& g : h.h0_basis) b.push_back(curve::to_string(g.f));
      row["h0_basis"] = b;
    }
    return row;
  };
  if (p["W"].is_array()) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < p["W"].size(); ++i) rows.push_back(one(p["W"][i], "params.W[" + std::to_string(i) + "]"));
    return rows;
  }
  return one(p["W"], "params.W");
}

ordered_json cmd_basis(Context& cx) {
  const TorsionDivisor d = divisor_param(cx.cfg.params, "divisor", true);
  ordered_json b = ordered_json::array();
  for (const auto& f : curve::rr_basis(cx.th().cyc(), d)) b.push_back(curve::to_string(f));
  const auto [h0, h1] = curve::h_dims(d);
  return {{"D", tmodel::to_json(d)}, {"degree", d.degree()}, {"h0", h0}, {"h1", h1}, {"basis", b}};
}

ordered_json cmd_coeff(Context& cx, bool& csv_ok) {
  csv_ok = true;
  const auto [lo, hi] = range_param(cx.cfg.params);
  ordered_json rows = ordered_json::array();
  for (const auto& r : ea::coefficient_ring(cx.th(), lo, hi))
    rows.push_back({{"degree", r.degree}, {"weight", r.weight}, {"dim", r.dim}, {"witness", r.witness},
                    {"periodic", r.periodic}});
  return rows;
}

ordered_json cmd_divpoly(Context& cx) {
  const long n = int_param(cx.cfg.params, "n");
  if (n < 1) throw ConfigError("params.n must be >= 1");
  const curve::CycCache& c = *cx.cache;
  const curve::FuncElt psi = c.division_psi(n);
  ordered_json factors = ordered_json::array();
  curve::FuncElt prod = curve::FuncElt::constant(Rational(1));
  for (long s = 2; s <= n; ++s) {
    if (n % s) continue;
    const curve::FuncElt ts = c.cyclotomic_t(s);
    prod = curve::mul(c.curve(), prod, ts);
    factors.push_back({{"s", s},
                       {"t_s", curve::to_string(ts)},
                       {"normalizer", exact::to_string(c.normalizer(s))},
                       {"primitive_factor", curve::to_string(c.primitive_factor(s))}});
  }
  const Rational scalar = curve::lead_at_e(psi) / curve::lead_at_e(prod);
  const long ord = curve::ord_e(psi);
  return {{"n", n},
          {"psi", curve::to_string(psi)},
          {"psi_parts", poly_triple(psi)},
          {"ord_e", ord},
          {"ord_e_expected", -(n * n - 1)},
          {"factors", factors},
          {"scalar", exact::to_string(scalar)},
          {"factorization_ok", psi == prod.scaled(scalar) && ord == -(n * n - 1)}};
}

ordered_json cmd_kmodel(const JobConfig& cfg) {
  const auto& p = cfg.params;
  std::string group = p.contains("group") && p["group"].is_string() ? p["group"].get<std::string>() : "";
  affine::AffineKind kind;
  if (group == "Gm" || group == "multiplicative")
    kind = affine::AffineKind::multiplicative;
  else if (group == "Ga" || group == "additive")
    kind = affine::AffineKind::additive;
  else
    throw ConfigError("params.group must be \"Gm\" or \"Ga\"");
  if (!p.contains("W")) throw ConfigError("params.W is required");
  const Representation w = rep_param(p["W"], "params.W");
  const long sign = int_param(p, "sign", 1);
  if (sign != 1 && sign != -1) throw ConfigError("params.sign must be 1 or -1");
  auto g = std::make_shared<const affine::AffineGroupData>(kind);
  const auto r = affine::affine_sphere_pipeline(g, w, static_cast<int>(sign));
  return {{"group", kind == affine::AffineKind::multiplicative ? "Gm" : "Ga"},
          {"W", tmodel::to_string(w)},
          {"sign", sign},
          {"h0", r.h0},
          {"h1", r.h1},
          {"generator", affine::to_string(r.generator)},
          {"generator_ok", r.generator_ok},
          {"certified", r.stable.certified},
          {"caps", tmodel::to_json(r.stable.caps)}};
}

ordered_json cmd_completion(Context& cx) {
  const long k = int_param(cx.cfg.params, "k");
  if (k < 1) throw ConfigError("params.k must be >= 1");
  const ea::CompletionModule m = ea::completion(cx.th(), k);
  exact::Matrix pw = exact::Matrix::identity(static_cast<std::size_t>(m.dim));
  for (long i = 0; i < k - 1; ++i) pw = pw * m.action;
  const bool nearly = !pw.is_zero();
  pw = pw * m.action;
  return {{"k", m.k}, {"dim", m.dim}, {"action", matrix_json(m.action)}, {"nilpotent_order_k", nearly && pw.is_zero()}};
}

ordered_json cmd_localcoh(Context& cx, bool& csv_ok) {
  csv_ok = true;
  const auto pi = pi_field(cx.cfg.params, "pi");
  const long a = int_param(cx.cfg.params, "a");
  const ea::LocalCohomology l = ea::local_cohomology(cx.th(), pi, a);
  ordered_json pj = ordered_json::array();
  for (long s : l.pi) pj.push_back(s);
  ordered_json per = ordered_json::object();
  for (auto [s, n] : l.per_class) per[std::to_string(s)] = n;
  ordered_json row = {{"pi", pj},          {"a", l.a},
                      {"degree", l.degree}, {"dim", l.dim},
                      {"expected", l.expected}, {"kernel", l.kernel},
                      {"cokernel", l.cokernel}, {"per_class", per}};
  return ordered_json::array({row});
}

ordered_json cmd_serre(Context& cx) {
  const TorsionDivisor d = divisor_param(cx.cfg.params, "divisor", true);
  const ea::SerrePairing s = ea::serre_pairing(cx.th(), d);
  ordered_json basis = ordered_json::array();
  for (const auto& f : s.basis) basis.push_back(curve::to_string(f));
  return {{"D", tmodel::to_json(d)}, {"degree", d.degree()}, {"rank", s.rank}, {"basis", basis},
          {"matrix", matrix_json(s.matrix)}};
}

ordered_json cmd_sections(Context& cx) {
  const auto& p = cx.cfg.params;
  const auto s = sheaf::sections(cx.th().cyc(), divisor_param(p, "divisor", false), {pi_field(p, "pi")},
                                 int_param(p, "cap", 0));
  return sheaf::sections_report(s);
}

ordered_json cmd_glue(Context& cx) {
  const auto& p = cx.cfg.params;
  const TorsionDivisor d = divisor_param(p, "divisor", false);
  const auto pi = pi_field(p, "pi"), pi2 = pi_field(p, "pi2");
  const long cap = int_param(p, "cap", 0);
  ordered_json a = ordered_json::array(), b = ordered_json::array();
  for (long s : pi) a.push_back(s);
  for (long s : pi2) b.push_back(s);
  return {{"D", tmodel::to_json(d)}, {"pi", a}, {"pi2", b}, {"cap", cap},
          {"exact", sheaf::glue_check(cx.th().cyc(), d, pi, pi2, cap)}};
}

ordered_json cmd_roundtrip(Context& cx) {
  const auto& p = cx.cfg.params;
  const Representation v = p.contains("V") ? rep_param(p["V"], "params.V") : Representation{};
  std::vector<sheaf::OpenSet> opens = {{}, {{1}}, {{2}}};
  if (p.contains("opens")) {
    if (!p["opens"].is_array()) throw ConfigError("params.opens must be an array of order sets");
    opens.clear();
    for (const auto& o : p["opens"]) opens.push_back({pi_param(o, "params.opens[]")});
  }
  std::vector<long> caps = {0, 2};
  if (p.contains("caps")) {
    if (!p["caps"].is_array()) throw ConfigError("params.caps must be an array of integers");
    caps.clear();
    for (const auto& c : p["caps"]) {
      if (!c.is_number_integer() || c.get<long>() < 0) throw ConfigError("params.caps entries must be >= 0");
      caps.push_back(c.get<long>());
    }
  }
  return {{"V", tmodel::to_string(v)}, {"ok", sheaf::roundtrip(cx.th(), v, opens, caps)}};
}

curve::WeierstrassCurve curve_from_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw ValidationError("cache key '" + key + "' is not \"a,b\"");
  return curve::WeierstrassCurve(exact::parse_rational(key.substr(0, comma)), exact::parse_rational(key.substr(comma + 1)));
}

// Returns the results; `failed` marks a verify mismatch.
ordered_json cmd_cache(const JobConfig& cfg, const std::shared_ptr<curve::CycCache>& cache,
                       const std::optional<std::filesystem::path>& path, bool& failed) {
  const auto& p = cfg.params;
  if (!p.contains("action") || !p["action"].is_string()) throw ConfigError("params.action must be warm, verify or clear");
  const std::string action = p["action"].get<std::string>();
  if (!path) throw ConfigError("cache administration needs a cache path");
  if (action == "clear") {
    std::error_code ec;
    const bool removed = std::filesystem::remove(*path, ec);
    if (ec) throw Error("cannot remove " + path->string() + ": " + ec.message());
    return {{"action", action}, {"path", path->string()}, {"removed", removed}};
  }
  if (action == "warm") {
    if (!cache) throw ConfigError("cache warm needs a curve");
    const long n = int_param(p, "n", 6);
    if (n < 1) throw ConfigError("params.n must be >= 1");
    curve::PsiStore store = curve::PsiStore::load(*path);
    store.preload(*cache);
    for (long m = 1; m <= n; ++m) cache->division_psi(m);
    store.absorb(*cache);
    store.save(*path);
    return {{"action", action}, {"path", path->string()}, {"curve", cache->curve().key()},
            {"n", n}, {"entries", store.find(cache->curve())->size()}};
  }
  if (action == "verify") {
    const curve::PsiStore store = curve::PsiStore::load(*path);
    std::size_t checked = 0;
    ordered_json mismatches = ordered_json::array();
    for (auto& [key, table] : const_cast<curve::PsiStore&>(store).entries()) {
      const curve::WeierstrassCurve c = curve_from_key(key);
      curve::CycCache fresh(c, curve::Coordinate::standard(c));
      for (const auto& [n, f] : table) {
        ++checked;
        if (n < 1 || fresh.division_psi(n) != f) mismatches.push_back({{"curve", key}, {"n", n}});
      }
    }
    failed = !mismatches.empty();
    return {{"action", action}, {"path", path->string()}, {"checked", checked}, {"ok", !failed},
            {"mismatches", mismatches}};
  }
  throw ConfigError("params.action must be warm, verify or clear");
}

std::string render(const JobConfig& cfg, const ordered_json& results, const std::shared_ptr<curve::CycCache>& cache,
                   bool csv_ok, bool ok) {
  if (cfg.format == Format::csv) {
    if (!csv_ok) throw ConfigError("csv output covers dimension tables only (dims, coeff, localcoh)");
    const ordered_json rows = results.is_array() ? results : ordered_json::array({results});
    if (cfg.command == "dims") return csv_table({"W", "weight", "h0", "h1", "e0", "e1", "certified"}, rows);
    if (cfg.command == "coeff") return csv_table({"degree", "weight", "dim", "witness", "periodic"}, rows);
    return csv_table({"a", "degree", "dim", "expected", "kernel", "cokernel"}, rows);
  }
  ordered_json report = ordered_json::object();
  report["command"] = cfg.command;
  report["params"] = cfg.params;
  if (cache) {
    report["curve"] = {{"a", exact::to_string(cache->curve().a())}, {"b", exact::to_string(cache->curve().b())}};
    report["coordinate"] = {{"form", "x/y"}, {"scale", exact::to_string(cache->coordinate().scale())},
                            {"verified", cache->coordinate_verified()}};
  }
  report["results"] = results;
  report["ok"] = ok;
  return report.dump(2) + "\n";
}

}  // namespace

JobResult run_job(const JobConfig& cfg, const curve::PsiStore* store,
                  const std::optional<std::filesystem::path>& cache_path) {
  JobResult out;
  try {
    const bool needs_curve = cfg.command != "kmodel" && cfg.command != "cache";
    if (needs_curve && !cfg.curve) throw ConfigError("command '" + cfg.command + "' needs a curve");
    if (cfg.curve) {
      const curve::WeierstrassCurve c(cfg.curve->a, cfg.curve->b);
      out.cache = std::make_shared<curve::CycCache>(c, curve::Coordinate::standard(c, cfg.scale));
      if (store) store->preload(*out.cache);
    }
    Context cx{cfg, out.cache, std::nullopt};
    bool csv_ok = false, failed = false;
    ordered_json results;
    const std::string& cmd = cfg.command;
    if (cmd == "dims") results = cmd_dims(cx, csv_ok);
    else if (cmd == "basis") results = cmd_basis(cx);
    else if (cmd == "coeff") results = cmd_coeff(cx, csv_ok);
    else if (cmd == "divpoly") results = cmd_divpoly(cx);
    else if (cmd == "kmodel") results = cmd_kmodel(cfg);
    else if (cmd == "completion") results = cmd_completion(cx);
    else if (cmd == "localcoh") results = cmd_localcoh(cx, csv_ok);
    else if (cmd == "serre") results = cmd_serre(cx);
    else if (cmd == "sections") results = cmd_sections(cx);
    else if (cmd == "glue") results = cmd_glue(cx);
    else if (cmd == "roundtrip") results = cmd_roundtrip(cx);
    else if (cmd == "cache") results = cmd_cache(cfg, out.cache, cache_path, failed);
    else throw ConfigError("unknown command '" + cmd + "'");
    out.text = render(cfg, results, out.cache, csv_ok, !failed);
    out.report = true;
    if (failed) out.code = kValidation;
  } catch (const ConfigError& e) {
    out = {kConfig, std::string("config error: ") + e.what(), false, out.cache};
  } catch (const CapTooSmall& e) {
    out = {kCapTooSmall, std::string("caps too small: ") + e.what(), false, out.cache};
  } catch (const ValidationError& e) {
    out = {kValidation, std::string("validation error: ") + e.what(), false, out.cache};
  } catch (const std::filesystem::filesystem_error& e) {
    out = {kConfig, std::string("i/o error: ") + e.what(), false, out.cache};
  } catch (const std::exception& e) {
    out = {kValidation, std::string("error: ") + e.what(), false, out.cache};
  }
  return out;
}

namespace {

// Store file state: loaded once, written back only when new entries appeared.
struct StoreSession {
  std::optional<std::filesystem::path> path;
  curve::PsiStore store;
  std::string before;

  explicit StoreSession(std::optional<std::filesystem::path> p) : path(std::move(p)) {
    if (path) {
      store = curve::PsiStore::load(*path);
      before = store.dump();
    }
  }
  const curve::PsiStore* get() const { return path ? &store : nullptr; }
  void absorb(const std::shared_ptr<curve::CycCache>& c) {
    if (path && c) store.absorb(*c);
  }
  void save() const {
    if (path && store.dump() != before) store.save(*path);
  }
};

int emit(const JobResult& r, const std::optional<std::filesystem::path>& out) {
  if (!r.report) {
    std::cerr << "ellt: " << r.text << "\n";
    return r.code;
  }
  if (out)
    util::write_atomic(*out, r.text);
  else
    std::cout << r.text;
  return r.code;
}

std::optional<std::filesystem::path> resolve_cache(const std::string& flag, const std::optional<std::filesystem::path>& cfg) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("ELLT_CACHE"); env && *env) return std::filesystem::path(env);
  return cfg;
}

int run_batch(const std::string& text, const std::string& cache_flag, bool timing) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const BatchConfig b = parse_batch(doc);
  StoreSession session(resolve_cache(cache_flag, b.cache_path));
  std::vector<JobResult> results(b.jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < b.jobs.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      results[i] = run_job(b.jobs[i], session.get(), session.path);
      if (results[i].report)
        util::write_atomic(*b.jobs[i].output_path, results[i].text);
      if (timing)
        std::cerr << "ellt: job " << i << " (" << b.jobs[i].command << ") "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count()
                  << " ms\n";
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(b.threads, static_cast<unsigned>(b.jobs.size()));
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  int code = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    session.absorb(results[i].cache);
    if (results[i].code != kOk) {
      std::cerr << "ellt: job " << i << ": " << (results[i].report ? std::string("failed check") : results[i].text)
                << "\n";
      if (code == kOk) code = results[i].code;
    }
  }
  session.save();
  return code;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact computations for the elliptic cohomology of the circle group.", "ellt"};
  std::string command, action, config_path, out_path, cache_flag;
  bool timing = false;
  std::vector<std::string> names = command_names();
  names.push_back("batch");
  app.add_option("command", command, "dims, basis, coeff, divpoly, kmodel, completion, localcoh, serre, sections, "
                                     "glue, roundtrip, cache or batch")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("action", action, "warm, verify or clear (cache only)");
  app.add_option("--config", config_path, "JSON job configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report path; written atomically");
  app.add_option("--cache", cache_flag, "division polynomial cache; overrides ELLT_CACHE and cache_path");
  app.add_flag("--timing", timing, "print wall time to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    const std::string text = util::read_file(config_path);
    if (command == "batch") {
      if (!action.empty() || !out_path.empty()) throw ConfigError("batch takes no action and no --out");
      return run_batch(text, cache_flag, timing);
    }
    JobConfig cfg = parse_config_text(text, command);
    if (!action.empty()) {
      if (cfg.command != "cache") throw ConfigError("only the cache command takes an action");
      if (cfg.params.contains("action") && cfg.params["action"] != action)
        throw ConfigError("action on the command line disagrees with params.action");
      cfg.params["action"] = action;
    }
    const auto out = out_path.empty() ? cfg.output_path : std::optional<std::filesystem::path>(out_path);
    StoreSession session(resolve_cache(cache_flag, cfg.cache_path));
    const auto t0 = std::chrono::steady_clock::now();
    // The cache command manages the file itself.
    const JobResult r = run_job(cfg, cfg.command == "cache" ? nullptr : session.get(), session.path);
    if (timing)
      std::cerr << "ellt: " << cfg.command << " "
                << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count()
                << " ms\n";
    if (cfg.command != "cache") {
      session.absorb(r.cache);
      session.save();
    }
    return emit(r, out);
  } catch (const ConfigError& e) {
    std::cerr << "ellt: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ValidationError& e) {
    std::cerr << "ellt: validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "ellt: " << e.what() << "\n";
    return kConfig;
  }
}

}  // namespace ellt::cli
