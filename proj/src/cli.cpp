#include "krq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "krq/dimqp.hpp"
#include "krq/errors.hpp"
#include "krq/fermionic.hpp"
#include "krq/g2solution.hpp"
#include "krq/lpsf.hpp"
#include "krq/qsystem.hpp"

namespace krq {

using nlohmann::json;

namespace {

struct Usage : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

json wjson(const RootDatum& d, const Weight& w) { return w.to_vector(d.rank()); }

json table_json(const RootDatum& d, const DecompositionTable& t) {
  json rows = json::array();
  for (const auto& [w, m] : t)
    rows.push_back({{"weight", wjson(d, w)}, {"mult", to_string(m)}, {"dim", to_string(dim_irrep(d, w))}});
  return rows;
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json bigints_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

RootDatumPtr need_type(const RunConfig& cfg) {
  if (cfg.lie_type.empty()) throw Usage("--type is required for this command");
  return root_datum(cfg.lie_type);
}

std::vector<int> nodes_of(const RootDatum& d, const RunConfig& cfg) {
  std::vector<int> out = cfg.nodes;
  if (out.empty())
    for (int a = 1; a <= d.rank(); ++a) out.push_back(a);
  for (int a : out)
    if (a < 1 || a > d.rank()) throw Usage("node " + std::to_string(a) + " is out of range for " + d.type().name());
  return out;
}

int single_node(const RootDatum& d, const RunConfig& cfg) {
  if (cfg.nodes.size() != 1) throw Usage("exactly one --node is required for this command");
  return nodes_of(d, cfg).front();
}

std::string coverage_note() {
  return "proven operator tables cover every node except E7 node 4 and E8 nodes 3, 4, 5, 8; "
         "step-polynomial formulas exist for E6 node 3, E7 node 2, E8 node 6, F4 node 2 (conjectural) "
         "and G2 node 2 (proven)";
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::vector<EvalPoint> points_for(const RootDatum& d, const RunConfig& cfg) {
  if (cfg.num_points < 1) throw Usage("--points must be at least 1");
  return draw_points(d.rank(), cfg.num_points, cfg.seed);
}

// ---------------------------------------------------------------- commands

json cmd_char(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  int a = single_node(*d, cfg);
  if (cfg.m < 0) throw Usage("--m must be nonnegative");
  auto seq = cached_char_sequence(*d, a, cfg.m, CharCache(cfg.cache_dir));
  const auto& x = seq[static_cast<size_t>(cfg.m)];
  ok = true;
  return {{"node", a}, {"m", cfg.m}, {"components", json::parse(character_json(*d, x))},
          {"dimension", to_string(x.dimension(*d))}};
}

json cmd_decompose(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  int a = single_node(*d, cfg);
  if (cfg.m < 0) throw Usage("--m must be nonnegative");
  auto seq = cached_char_sequence(*d, a, cfg.m, CharCache(cfg.cache_dir));
  const auto& x = seq[static_cast<size_t>(cfg.m)];
  ok = true;
  return {{"node", a}, {"m", cfg.m}, {"decomposition", table_json(*d, to_table(x))},
          {"dimension", to_string(x.dimension(*d))}};
}

json cmd_dims(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  int M = cfg.m_max.value_or(10);
  json per = json::array();
  for (int a : nodes_of(*d, cfg)) per.push_back({{"node", a}, {"dims", bigints_json(dim_sequence(*d, a, M))}});
  ok = true;
  return {{"m_max", M}, {"nodes", per}};
}

json props_json(const HVectorProperties& p) {
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  return {{"symmetric", p.symmetric},   {"positive", p.positive},           {"unimodal", p.unimodal},
          {"log_concave", p.log_concave}, {"symmetric_at", opt(p.symmetric_at)}, {"positive_at", opt(p.positive_at)},
          {"unimodal_at", opt(p.unimodal_at)}, {"log_concave_at", opt(p.log_concave_at)}};
}

bool hvector_shape_ok(const HVectorProperties& p) { return p.symmetric && p.positive && p.unimodal && p.log_concave; }

json cmd_dimqp(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  ok = true;
  json per = json::array();
  std::vector<QuasiPoly> qs;
  for (int a : nodes_of(*d, cfg)) {
    auto r = dimqp_report(*d, a);
    json branches = json::array(), substituted = json::array();
    for (int k = 0; k < r.t; ++k) {
      branches.push_back(rationals_json(r.q.polys[static_cast<size_t>(k)]));
      substituted.push_back(rationals_json(r.q.substituted(k)));
    }
    per.push_back({{"node", a},
                   {"e", r.e},
                   {"t", r.t},
                   {"c", r.c},
                   {"predicted_c", r.predicted_c},
                   {"h_vector", bigints_json(r.h.h)},
                   {"leading_coefficient", to_string(r.leading)},
                   {"branches", branches},
                   {"branches_in_n", substituted},
                   {"properties", props_json(r.props)},
                   {"checks",
                    {{"matches_dims", r.matches_dims},
                     {"leading_coefficients_rigid", r.rigid},
                     {"reciprocity", r.reciprocity},
                     {"negative_string", r.negative_string}}}});
    ok = ok && r.ok() && hvector_shape_ok(r.props);
    qs.push_back(r.q);
  }
  json out{{"nodes", per}};
  if (cfg.nodes.empty()) {
    auto lc = leading_coefficient(*d);
    out["leading_system"] = {{"exact", rationals_json(lc.exact)},
                             {"exact_solves_system", lc.exact_solves_system},
                             {"max_rel_error_numeric", static_cast<double>(lc.max_rel_error)}};
    auto qcheck = check_qsystem_quasipoly(*d, qs, -10, 10);
    out["qsystem_residuals_zero"] = qcheck.ok;
    if (!qcheck.ok) out["qsystem_failure"] = {{"node", *qcheck.first_failure_node}, {"m", *qcheck.first_failure_m}};
    ok = ok && lc.ok() && qcheck.ok;
  }
  return out;
}

json cmd_hvector(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  ok = true;
  json per = json::array();
  for (int a : nodes_of(*d, cfg)) {
    auto h = h_vector(*d, a);
    auto p = hvector_properties(h);
    per.push_back({{"node", a}, {"h_vector", bigints_json(h.h)}, {"properties", props_json(p)}});
    ok = ok && hvector_shape_ok(p);
  }
  return {{"nodes", per}};
}

json cmd_orders(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  json per = json::array();
  std::vector<long> sorted;
  for (int a : nodes_of(*d, cfg)) {
    if (!operator_covered(*d, a)) {
      per.push_back({{"node", a}, {"order", nullptr}, {"covered", false}});
      continue;
    }
    auto op = node_operator(*d, a, cfg.table);
    json blocks = json::array();
    for (const auto& b : orbit_blocks(*d, op))
      blocks.push_back({{"dominant", wjson(*d, b.dominant)}, {"step", b.step}, {"size", to_string(b.size)}});
    BigInt ord = operator_order(*d, a);
    per.push_back({{"node", a}, {"order", to_string(ord)}, {"covered", true}, {"blocks", blocks}});
    sorted.push_back(ord.get_si());
  }
  std::sort(sorted.begin(), sorted.end());
  ok = true;
  return {{"nodes", per}, {"sorted_orders", sorted}};
}

json cmd_verify_recurrence(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  if (cfg.mode != "symbolic" && cfg.mode != "eval") throw Usage("--mode must be symbolic or eval");
  std::vector<int> nodes;
  if (cfg.nodes.empty()) {
    for (int a = 1; a <= d->rank(); ++a)
      if (operator_covered(*d, a)) nodes.push_back(a);
  } else {
    nodes = nodes_of(*d, cfg);
  }
  ok = true;
  json per = json::array();
  CharCache cache(cfg.cache_dir);
  for (int a : nodes) {
    auto op = node_operator(*d, a, cfg.table);  // throws UncoveredNode
    int ell = static_cast<int>(op.order());
    int M = cfg.m_max.value_or(ell + 2);
    if (M < ell) throw Usage("--mmax " + std::to_string(M) + " is below the operator order " + std::to_string(ell));
    json entry{{"node", a}, {"order", ell}, {"mode", cfg.mode}, {"m_range", {ell, M}},
               {"table", cfg.table == TableVariant::Printed ? "printed" : "corrected"}};
    bool node_ok = true;
    if (cfg.mode == "symbolic") {
      auto seq = cached_char_sequence(*d, a, M, cache);
      auto r = verify_recurrence_symbolic(*d, op, seq, ell, M);
      node_ok = r.residual_zero;
      entry["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
    } else {
      json pts = json::array();
      for (const auto& pt : points_for(*d, cfg)) {
        auto coeffs = operator_coeffs_at(*d, op, pt);
        auto r = verify_recurrence_eval(coeffs, eval_sequence(*d, a, pt, M), ell, M);
        node_ok = node_ok && r.residual_zero;
        pts.push_back({{"point", pt.str()},
                       {"residual_zero", r.residual_zero},
                       {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)}});
      }
      entry["points"] = pts;
      entry["evidence"] = "exact evaluation at the listed points";
    }
    entry["residual_zero"] = node_ok;
    ok = ok && node_ok;
    per.push_back(entry);
  }
  return {{"nodes", per}};
}

json cmd_verify_lpsf(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  int M = cfg.m_max.value_or(6);
  ok = true;
  json per = json::array(), skipped = json::array();
  CharCache cache(cfg.cache_dir);
  const bool g2 = d->type().family == Family::G;
  for (int a : nodes_of(*d, cfg)) {
    std::string source;
    if (lpsf_covered(*d, a)) source = "lattice-point table";
    else if (g2 && a == 2) source = "G2 step-polynomial (proven)";
    else if (cfg.conjectural && ef_covered(*d, a)) source = "exceptional step-polynomial (conjectural)";
    if (source.empty()) {
      if (!cfg.nodes.empty()) (void)lpsf_table(*d, a);  // throws UncoveredNode with the message
      skipped.push_back(a);
      continue;
    }
    auto seq = cached_char_sequence(*d, a, M, cache);
    std::optional<int> bad;
    for (int m = 0; m <= M && !bad; ++m) {
      Character lhs;
      if (lpsf_covered(*d, a)) lhs = lpsf_character(*d, a, m);
      else if (g2) lhs = Character::from_table(g2_node2_table(m));
      else lhs = Character::from_table(conj_ef_table(*d, a, m));
      if (lhs != seq[static_cast<size_t>(m)]) bad = m;
    }
    per.push_back({{"node", a}, {"source", source}, {"m_max", M}, {"agrees", !bad},
                   {"first_failure", bad ? json(*bad) : json(nullptr)}});
    ok = ok && !bad;
  }
  return {{"nodes", per}, {"skipped", skipped}};
}

json cmd_verify_fermionic(const RunConfig& cfg, bool& ok) {
  auto d = need_type(cfg);
  int M = cfg.m_max.value_or(3);
  ok = true;
  json per = json::array();
  CharCache cache(cfg.cache_dir);
  for (int a : nodes_of(*d, cfg)) {
    auto seq = cached_char_sequence(*d, a, M, cache);
    std::optional<int> bad;
    for (int m = 0; m <= M && !bad; ++m)
      if (kr_decomposition(*d, a, m) != to_table(seq[static_cast<size_t>(m)])) bad = m;
    per.push_back({{"node", a}, {"m_max", M}, {"agrees", !bad}, {"first_failure", bad ? json(*bad) : json(nullptr)}});
    ok = ok && !bad;
  }
  return {{"nodes", per}};
}

json cmd_verify_g2(const RunConfig& cfg, bool& ok) {
  int M = cfg.m_max.value_or(30);
  if (cfg.num_points < 1) throw Usage("--points must be at least 1");
  ClosedFormG2 cf;
  ok = true;
  json pts = json::array();
  uint64_t seed = cfg.seed;
  int done = 0;
  for (int tries = 0; done < cfg.num_points && tries < 10 * cfg.num_points; ++tries) {
    auto pt = draw_points(2, 1, seed++)[0];
    try {
      auto r = verify_g2_identities(cf, pt, M);
      pts.push_back({{"point", pt.str()},
                     {"m_max", M},
                     {"identities_ok", r.identities_ok},
                     {"q_match_ok", r.q_match_ok},
                     {"operator_ok", r.operator_ok},
                     {"detail", r.detail}});
      ok = ok && r.ok();
      ++done;
    } catch (const EvaluationError&) {
      // degenerate point for the closed form; draw another
    }
  }
  if (done < cfg.num_points) throw Error("could not find enough non-degenerate evaluation points");
  EvalPoint real{{Rational(3), Rational(2)}};
  auto [ratio, limit] = g2_ratio(cf, real, 60);
  Rational rel = (ratio - limit) / limit;
  if (rel < 0) rel = -rel;
  bool ratio_ok = rel < Rational(1, 100);
  ok = ok && ratio_ok;
  return {{"points", pts},
          {"asymptotic", {{"point", real.str()}, {"m", 60}, {"ratio", ratio.get_d()}, {"limit", limit.get_d()},
                          {"relative_error", rel.get_d()}, {"within_one_percent", ratio_ok}}},
          {"evidence", "exact evaluation at the listed points"}};
}

json cmd_verify_gf(const RunConfig& cfg, bool& ok) {
  if (cfg.truncation < 0) throw Usage("--truncation must be nonnegative");
  auto ef = gf_check_ef(cfg.truncation);
  auto g = gf_check_g2(cfg.truncation);
  ok = ef.ok && g.ok;
  return {{"truncation", cfg.truncation},
          {"exceptional", {{"ok", ef.ok}, {"failures", ef.failures}}},
          {"g2", {{"ok", g.ok}, {"failures", g.failures}}}};
}

// --------------------------------------------------------- verify-bound

struct BoundStore {
  std::filesystem::path dir;
  bool enabled() const { return !dir.empty(); }

  std::map<int, bool> load_records(const std::string& key) const {
    std::map<int, bool> out;
    if (!enabled()) return out;
    std::ifstream in(dir / (key + ".records.jsonl"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = json::parse(line, nullptr, false);
      if (j.is_discarded()) continue;  // a torn last line from an interrupted write
      out[j.at("m").get<int>()] = j.at("pass").get<bool>();
    }
    return out;
  }
  void save_records(const std::string& key, const std::map<int, bool>& recs) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir);
    auto p = dir / (key + ".records.jsonl");
    auto tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      for (const auto& [m, pass] : recs) out << json{{"m", m}, {"pass", pass}}.dump() << '\n';
    }
    std::filesystem::rename(tmp, p);
  }
  std::optional<json> load_checkpoint(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir / (key + ".ckpt.json"));
    if (!in) return std::nullopt;
    auto j = json::parse(in, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
  }
  void save_checkpoint(const std::string& key, const json& j) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir);
    auto p = dir / (key + ".ckpt.json");
    auto tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    std::filesystem::rename(tmp, p);
  }
  void drop_checkpoint(const std::string& key) const {
    if (enabled()) std::filesystem::remove(dir / (key + ".ckpt.json"));
  }
};

json cmd_verify_bound(const RunConfig& cfg, bool& ok, bool& incomplete) {
  auto d = need_type(cfg);
  int a = single_node(*d, cfg);
  const bool g2 = d->type().family == Family::G && a == 2;
  if (!g2 && !ef_covered(*d, a))
    throw UncoveredNode("verify-bound applies to the step-polynomial nodes only; " + coverage_note());
  BigInt bound = finite_verification_bound(*d, a);
  int full = static_cast<int>(bound.get_si()) - 1;  // m = 0 .. bound - 1 determine the sequence
  int M = cfg.m_max.value_or(std::min(full, 200));
  if (M < 0) throw Usage("--mmax must be nonnegative");
  CharCache cc(cfg.cache_dir);
  BoundStore store;
  if (cc.enabled()) store.dir = cc.dir() / "verify-bound";
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  json out{{"node", a}, {"bound", to_string(bound)}, {"m_max", M}, {"resumable", store.enabled()}};
  ok = true;
  incomplete = false;
  int checked_total = 0;
  std::optional<int> first_fail;

  auto finish_records = [&](const std::string& key, const std::map<int, bool>& recs) {
    int cnt = 0;
    for (int m = 0; m <= M; ++m) {
      auto it = recs.find(m);
      if (it == recs.end()) continue;
      ++cnt;
      if (!it->second) {
        ok = false;
        if (!first_fail || m < *first_fail) first_fail = m;
      }
    }
    store.save_records(key, recs);
    return cnt;
  };

  if (g2) {
    std::string key = d->type().name() + "-" + std::to_string(a) + "-symbolic";
    auto recs = store.load_records(key);
    int reused = 0;
    for (int m = 0; m <= M; ++m) reused += recs.count(m) ? 1 : 0;
    if (reused <= M) {
      auto seq = cached_char_sequence(*d, a, M, cc);
      for (int m = 0; m <= M; ++m)
        if (!recs.count(m)) recs[m] = Character::from_table(g2_node2_table(m)) == seq[static_cast<size_t>(m)];
    }
    checked_total = finish_records(key, recs);
    out["mode"] = "symbolic";
    out["records_reused"] = reused;
    out["evidence"] = "exact symbolic comparison of characters";
  } else {
    if (cfg.num_points < 1) throw Usage("--points must be at least 1");
    json pts = json::array();
    size_t total = ef_weyl_element_count(*d);
    for (const auto& pt : draw_points(d->rank(), cfg.num_points, cfg.seed)) {
      std::string key = d->type().name() + "-" + std::to_string(a) + "-" + hex(fnv1a(pt.str()));
      auto recs = store.load_records(key);
      int reused = 0;
      for (int m = 0; m <= M; ++m) reused += recs.count(m) ? 1 : 0;
      json pj{{"point", pt.str()}, {"records_reused", reused}};
      if (reused <= M && !incomplete) {
        std::string ckey = key + "-m" + std::to_string(M);
        EfPartialSum acc;
        acc.numer.assign(static_cast<size_t>(M) + 1, 0);
        size_t done = 0;
        if (auto ck = store.load_checkpoint(ckey); ck && ck->at("m_max").get<int>() == M) {
          done = ck->at("done").get<size_t>();
          acc.denom = parse_rational(ck->at("denom").get<std::string>());
          const auto& nums = ck->at("numer");
          for (int m = 0; m <= M; ++m) acc.numer[m] = parse_rational(nums.at(m).get<std::string>());
          pj["resumed_from_element"] = done;
        }
        const size_t batch = 48;
        while (done < total) {
          if (cfg.budget_seconds > 0 && elapsed() > cfg.budget_seconds) break;
          size_t end = std::min(total, done + batch);
          auto part = conj_ef_partial_sum(*d, a, pt.y, M, done, end);
          acc.denom += part.denom;
          for (int m = 0; m <= M; ++m) acc.numer[m] += part.numer[m];
          done = end;
          if (done < total)
            store.save_checkpoint(ckey, {{"m_max", M}, {"done", done}, {"denom", to_string(acc.denom)},
                                         {"numer", rationals_json(acc.numer)}});
        }
        pj["weyl_elements_done"] = done;
        pj["weyl_elements_total"] = total;
        if (done < total) {
          incomplete = true;
        } else {
          if (acc.denom == 0) throw EvaluationError("Weyl denominator vanishes at " + pt.str());
          auto q = eval_sequence(*d, a, pt, M);
          for (int m = 0; m <= M; ++m)
            if (!recs.count(m)) recs[m] = acc.numer[m] / acc.denom == q[static_cast<size_t>(m)];
          store.drop_checkpoint(ckey);
        }
      }
      int cnt = finish_records(key, recs);
      pj["m_checked"] = cnt;
      checked_total += cnt;
      pts.push_back(pj);
    }
    out["mode"] = "eval";
    out["points"] = pts;
    out["evidence"] = "exact evaluation at the listed points; not a symbolic proof";
  }
  out["m_checked"] = checked_total;
  out["first_failure"] = first_fail ? json(*first_fail) : json(nullptr);
  out["covers_bound"] = M >= full;
  out["complete"] = !incomplete;
  return out;
}

// ------------------------------------------------------------- output

void pretty(std::ostream& os, const json& j, int indent) {
  std::string pad(static_cast<size_t>(std::max(indent, 0)), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured() && !(it.value().is_array() && !it.value().empty() &&
                                           !it.value().front().is_structured())) {
        os << pad << it.key() << ":\n";
        pretty(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": ";
        pretty(os, it.value(), -1);
        os << '\n';
      }
    }
  } else if (j.is_array()) {
    bool flat = j.empty() || !j.front().is_structured();
    if (flat) {
      if (indent >= 0) os << pad;
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ' ';
        pretty(os, j[i], -1);
      }
      if (indent >= 0) os << '\n';
    } else {
      for (const auto& x : j) {
        if (x.is_array()) {
          os << pad << "- ";
          pretty(os, x, -1);
          os << '\n';
        } else {
          os << pad << "-\n";
          pretty(os, x, indent + 2);
        }
      }
    }
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

std::string to_csv(const std::string& cmd, const json& report) {
  std::ostringstream os;
  if (cmd == "dims") {
    const auto& nodes = report.at("nodes");
    bool multi = nodes.size() > 1;
    os << (multi ? "node,m,dim\n" : "m,dim\n");
    for (const auto& n : nodes) {
      const auto& dims = n.at("dims");
      for (size_t m = 0; m < dims.size(); ++m) {
        if (multi) os << n.at("node").get<int>() << ',';
        os << m << ',' << dims[m].get<std::string>() << '\n';
      }
    }
  } else if (cmd == "orders") {
    os << "node,order\n";
    for (const auto& n : report.at("nodes"))
      os << n.at("node").get<int>() << ',' << (n.at("order").is_null() ? "" : n.at("order").get<std::string>()) << '\n';
  } else if (cmd == "hvector" || cmd == "dimqp") {
    os << "node,j,h\n";
    for (const auto& n : report.at("nodes")) {
      const auto& h = n.at("h_vector");
      for (size_t j = 0; j < h.size(); ++j) os << n.at("node").get<int>() << ',' << j << ',' << h[j].get<std::string>() << '\n';
    }
  } else {
    throw Usage("csv output is available for dims, orders, hvector and dimqp");
  }
  return os.str();
}

}  // namespace

const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> cmds{"char",          "decompose",       "dims",       "dimqp",
                                             "hvector",       "orders",          "verify-recurrence",
                                             "verify-lpsf",   "verify-fermionic", "verify-g2", "verify-gf",
                                             "verify-bound"};
  return cmds;
}

RunResult run(const std::string& cmd, const RunConfig& cfg) {
  json report{{"schema", kReportSchema}, {"command", cmd}};
  if (!cfg.lie_type.empty()) report["type"] = cfg.lie_type;
  RunResult res;
  bool ok = false, incomplete = false;
  try {
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "pretty")
      throw Usage("--format must be json, csv or pretty");
    json body;
    if (cmd == "char") body = cmd_char(cfg, ok);
    else if (cmd == "decompose") body = cmd_decompose(cfg, ok);
    else if (cmd == "dims") body = cmd_dims(cfg, ok);
    else if (cmd == "dimqp") body = cmd_dimqp(cfg, ok);
    else if (cmd == "hvector") body = cmd_hvector(cfg, ok);
    else if (cmd == "orders") body = cmd_orders(cfg, ok);
    else if (cmd == "verify-recurrence") body = cmd_verify_recurrence(cfg, ok);
    else if (cmd == "verify-lpsf") body = cmd_verify_lpsf(cfg, ok);
    else if (cmd == "verify-fermionic") body = cmd_verify_fermionic(cfg, ok);
    else if (cmd == "verify-g2") body = cmd_verify_g2(cfg, ok);
    else if (cmd == "verify-gf") body = cmd_verify_gf(cfg, ok);
    else if (cmd == "verify-bound") body = cmd_verify_bound(cfg, ok, incomplete);
    else throw Usage("unknown command '" + cmd + "'");
    report.update(body);
    report["ok"] = ok;
    if (incomplete) report["status"] = "incomplete";
    res.exit_code = !ok ? kExitFail : incomplete ? kExitIncomplete : kExitPass;
    if (cfg.format == "csv") {
      res.output = to_csv(cmd, report);
      return res;
    }
  } catch (const UncoveredNode& e) {
    report["ok"] = false;
    report["error"] = std::string(e.what());
    report["coverage"] = coverage_note();
    res.exit_code = kExitUncovered;
  } catch (const InvalidArgument& e) {
    report["ok"] = false;
    report["error"] = std::string(e.what());
    res.exit_code = kExitUsage;
  } catch (const Error& e) {
    report["ok"] = false;
    report["error"] = std::string(e.what());
    res.exit_code = kExitFail;
  }
  if (cfg.format == "pretty") {
    std::ostringstream os;
    pretty(os, report, 0);
    res.output = os.str();
  } else {
    res.output = report.dump(2) + "\n";
  }
  return res;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Kirillov-Reshetikhin characters and Q-systems"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string table = "printed";
  int mmax = -1;
  static const std::map<std::string, std::string> blurbs{
      {"char", "Q_m at one node in the irreducible basis"},
      {"decompose", "Decomposition of Q_m into irreducibles, with dimensions"},
      {"dims", "Dimensions of Q_m for m = 0..mmax"},
      {"dimqp", "Dimension quasipolynomial, h-vector and their checks"},
      {"hvector", "h-vector of the dimension generating function"},
      {"orders", "Orders of the linear recurrence operators"},
      {"verify-recurrence", "Check that each node operator annihilates Q_m"},
      {"verify-lpsf", "Compare lattice-point formulas with the Q-system"},
      {"verify-fermionic", "Compare the fermionic formula with the Q-system"},
      {"verify-g2", "Check the closed-form G2 solution at seeded points"},
      {"verify-gf", "Check the step-polynomial generating functions"},
      {"verify-bound", "Resumable check of step-polynomial formulas up to the finite bound"}};
  for (const auto& name : cli_commands()) {
    auto* sc = app.add_subcommand(name, blurbs.count(name) ? blurbs.at(name) : "");
    sc->add_option("-t,--type", cfg.lie_type, "Lie type such as G2, F4, E6, B3");
    sc->add_option("-n,--node", cfg.nodes, "Dynkin node(s), 1-based");
    sc->add_option("-m,--m", cfg.m, "Index m for char and decompose");
    sc->add_option("--mmax", mmax, "Largest index m to compute or check");
    sc->add_option("--mode", cfg.mode, "symbolic or eval")->check(CLI::IsMember({"symbolic", "eval"}));
    sc->add_option("--points", cfg.num_points, "Number of evaluation points");
    sc->add_option("--seed", cfg.seed, "Seed for reproducible evaluation points");
    sc->add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $KRQ_CACHE_DIR)");
    sc->add_option("--format", cfg.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sc->add_option("--table", table, "Operator table variant")->check(CLI::IsMember({"printed", "corrected"}));
    sc->add_option("--truncation", cfg.truncation, "Power-series truncation for verify-gf");
    sc->add_option("--budget-seconds", cfg.budget_seconds, "Stop verify-bound after this long (resumable)");
    sc->add_flag("--conjectural", cfg.conjectural, "Include conjectural step-polynomial rows in verify-lpsf");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (mmax >= 0) cfg.m_max = mmax;
  cfg.table = table == "corrected" ? TableVariant::Corrected : TableVariant::Printed;
  std::string cmd = app.get_subcommands().front()->get_name();
  auto res = run(cmd, cfg);
  out << res.output;
  out.flush();
  return res.exit_code;
}

}  // namespace krq
