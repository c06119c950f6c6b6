#include "smbribe/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "smbribe/engine.hpp"
#include "smbribe/testkit.hpp"

namespace smbribe {

using nlohmann::json;

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::Internal, "SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string instance_digest(const Instance &inst) { return sha256_hex(serialize_instance(inst)); }

namespace {

json optional_int(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }

json pairs_json(const Instance &inst, const Matching &m) {
  json out = json::array();
  for (auto [a, b] : m.pairs()) out.push_back({inst.men_labels[a], inst.women_labels[b]});
  return out;
}

}  // namespace

std::string render_result(const SolveRequest &req, const ManipulationResult &res, const RunManifest &manifest) {
  const Instance &inst = req.instance;
  json doc;
  doc["format"] = "result 1";
  doc["goal"] = goal_name(req.goal);
  doc["action"] = action_type_name(req.action);
  doc["budget"] = req.budget ? json(*req.budget) : json("inf");
  if (req.pair) doc["pair"] = {inst.men_labels[req.pair->first], inst.women_labels[req.pair->second]};
  doc["status"] = status_name(res.status);
  doc["cost"] = optional_int(res.cost);
  doc["optimum"] = optional_int(res.optimum);
  doc["quality"] = quality_name(res.quality);
  doc["algorithm"] = res.algorithm;

  json actions = json::array();
  json witness = nullptr;
  if (res.status == Status::Feasible) {
    for (const Action &a : res.actions) actions.push_back(serialize_action(inst, a));
    json absent = json::array();
    for (Side s : {Side::Man, Side::Woman})
      for (int i = 0; i < inst.count(s); ++i) {
        AgentRef a{s, i};
        if (!res.witness_mask.present(a)) absent.push_back(inst.label(a));
      }
    witness = {{"matching", pairs_json(inst, res.witness_matching)}, {"absent", absent}};
  }
  doc["actions"] = actions;
  doc["witness"] = witness;
  doc["manifest"] = {
      {"command", manifest.command},
      {"seed", manifest.seed ? json(*manifest.seed) : json(nullptr)},
      {"instance_digest", "sha256:" + manifest.instance_digest},
      {"duration_ms", std::round(manifest.seconds * 1e6) / 1e3},
  };
  return doc.dump(2) + "\n";
}

CheckReport check_matching(const Instance &inst, const Matching &m, bool unique) {
  PresenceMask mask = PresenceMask::all(inst);
  std::ostringstream out;
  PairList bp = blocking_pairs(inst, mask, m);
  for (auto [a, b] : bp) out << "blocking " << inst.men_labels[a] << " " << inst.women_labels[b] << "\n";
  bool stable = bp.empty();
  out << "blocking-pairs " << bp.size() << "\n";
  out << "stable " << (stable ? "yes" : "no") << "\n";
  CheckReport report;
  report.holds = stable;
  if (unique) {
    bool uniq = is_unique_stable(inst, mask, m);
    out << "unique " << (uniq ? "yes" : "no") << "\n";
    report.holds = uniq;
  }
  report.text = out.str();
  return report;
}

std::vector<BenchRow> run_bench(const BenchConfig &config) {
  Rng master(config.seed);
  std::vector<BenchRow> rows;
  for (int n : config.n_list) {
    for (int rep = 0; rep < config.reps; ++rep) {
      BenchRow row;
      row.n = n;
      row.rep = rep;
      row.instance_seed = master.next();
      Instance inst = random_instance(n, row.instance_seed);
      SolveRequest req;
      if (config.goal == Goal::ConstEx || config.goal == Goal::DestEx) {
        int m = static_cast<int>(master.below(n));
        int w = static_cast<int>(master.below(n));
        req = SolveRequest::for_pair(std::move(inst), config.goal, config.action, m, w, std::nullopt);
      } else {
        Matching target = random_perfect_matching(n, master);
        req = SolveRequest::for_matching(std::move(inst), config.goal, config.action, std::move(target),
                                         std::nullopt);
      }
      ManipulationResult res = solve(req, Algo::Auto);
      if (res.status == Status::Feasible) row.cost = res.cost;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow> &rows) {
  std::vector<BenchSummary> out;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    std::vector<int> costs;
    while (j < rows.size() && rows[j].n == rows[i].n) {
      if (rows[j].cost) costs.push_back(*rows[j].cost);
      ++j;
    }
    BenchSummary s;
    s.n = rows[i].n;
    s.solved = static_cast<int>(costs.size());
    if (!costs.empty()) {
      std::sort(costs.begin(), costs.end());
      double sum = 0;
      for (int c : costs) sum += c;
      s.mean_cost = sum / costs.size();
      std::size_t h = costs.size() / 2;
      s.median_cost = costs.size() % 2 ? costs[h] : (costs[h - 1] + costs[h]) / 2.0;
    }
    out.push_back(s);
    i = j;
  }
  return out;
}

std::string render_bench(const BenchConfig &config, const std::vector<BenchRow> &rows) {
  std::ostringstream out;
  char buf[160];
  out << "# bench " << goal_name(config.goal) << " " << action_type_name(config.action) << " seed " << config.seed
      << "\n";
  out << "n\trep\tinstance_seed\tcost\n";
  for (const auto &r : rows)
    out << r.n << "\t" << r.rep << "\t" << r.instance_seed << "\t" << (r.cost ? std::to_string(*r.cost) : "-")
        << "\n";
  out << "summary\tn\tsolved\tmean_cost\tmedian_cost\tmean_fraction\tmedian_fraction\n";
  for (const auto &s : summarize(rows)) {
    std::snprintf(buf, sizeof buf, "summary\t%d\t%d\t%.3f\t%.3f\t%.4f\t%.4f\n", s.n, s.solved, s.mean_cost,
                  s.median_cost, s.mean_cost / s.n, s.median_cost / s.n);
    out << buf;
  }
  return out.str();
}

}  // namespace smbribe
