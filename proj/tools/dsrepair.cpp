// dsrepair: repair analysis, simulation and optimization for erasure-coded
// storage over lossy packet links. Every stochastic path is controlled by
// --seed; omitting it picks one and prints it so runs stay reproducible.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "dsr/analysis.hpp"
#include "dsr/channel.hpp"
#include "dsr/codesim.hpp"
#include "dsr/errors.hpp"
#include "dsr/flowgraph.hpp"
#include "dsr/optimizer.hpp"

using namespace dsr;

namespace {

std::vector<Rational> parse_p_list(const std::string& s) {
  // "0.1,0.2" or "0.01:0.1:0.01"
  std::vector<Rational> out;
  if (s.find(':') != std::string::npos) {
    std::istringstream is(s);
    std::string a, b, c;
    std::getline(is, a, ':');
    std::getline(is, b, ':');
    std::getline(is, c, ':');
    Rational start = parse_rational(a), stop = parse_rational(b),
             step = parse_rational(c);
    if (step <= 0) throw ValidationError("range step must be positive");
    for (Rational v = start; v <= stop; v += step) out.push_back(v);
  } else {
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
  }
  if (out.empty()) throw ValidationError("empty p list");
  return out;
}

uint64_t resolve_seed(const std::optional<uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  uint64_t s = ((uint64_t)rd() << 32) | rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f << text;
}

std::string csv_to_json(const std::string& csv) {
  // rows as arrays of records keyed by the header line
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  nlohmann::json rows = nlohmann::json::array();
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    nlohmann::json row;
    for (size_t i = 0; i < cols.size() && std::getline(ls, cell, ','); ++i) {
      size_t pos = 0;
      double num = 0;
      bool numeric = false;
      try {
        num = std::stod(cell, &pos);
        numeric = !cell.empty() && pos == cell.size();
      } catch (...) {
      }
      if (numeric)
        row[cols[i]] = num;
      else
        row[cols[i]] = cell;
    }
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed-storage repair over packet erasure links"};
  app.require_subcommand(1);

  // shared option storage
  struct {
    int n = 10, k = 5, d = 9, h = 0, dtot = 9, d1 = 9, d2 = 0;
    std::string alpha = "0", beta = "1", M = "1", p = "0", delta = "0.01";
    std::string alpha_prime, mode = "mbr", type = "random";
    uint32_t q = 256;
    int tmin = 1, tmax = 30, t_cap = 0, points = 64, failed = 0, stage = 1;
    uint64_t trials = 100000;
    std::optional<uint64_t> seed;
    std::string output, format = "csv", state_file, schedule_file, transcript;
    std::string helpers, repairing, beta_sent = "1";
    bool printed_g = false;
  } o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--output,-o", o.output, "output file (default stdout)");
    c->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* tradeoff = app.add_subcommand("tradeoff", "bandwidth-storage tradeoff curve CSV");
  tradeoff->add_option("--n", o.n)->required();
  tradeoff->add_option("--k", o.k)->required();
  tradeoff->add_option("--d", o.d)->required();
  tradeoff->add_option("--M", o.M, "file size in packets")->required();
  tradeoff->add_option("--p", o.p, "erasure probability list (comma) or range a:b:step");
  tradeoff->add_option("--points", o.points, "samples per segment");
  tradeoff->add_flag("--printed-g", o.printed_g, "use the uncorrected g(i)");
  add_common(tradeoff);

  auto* capacity = app.add_subcommand("capacity", "closed-form system capacity");
  capacity->set_help_flag("--help", "print help");  // frees -h for the option below
  capacity->add_option("--n", o.n)->required();
  capacity->add_option("--k", o.k)->required();
  capacity->add_option("--d", o.d)->required();
  capacity->add_option("--h", o.h);
  capacity->add_option("--alpha", o.alpha)->required();
  capacity->add_option("--beta-sent", o.beta_sent, "beta' per helper")->required();
  capacity->add_option("--p", o.p);

  auto* flowg = app.add_subcommand("flowgraph", "min-cut of a repair schedule");
  flowg->add_option("--schedule", o.schedule_file, "schedule JSON")->required();
  add_common(flowg);

  auto* construct = app.add_subcommand("construct", "build a storage state");
  construct->add_option("--type", o.type, "random|msr-vandermonde")
      ->check(CLI::IsMember({"random", "msr-vandermonde"}));
  construct->add_option("--n", o.n)->required();
  construct->add_option("--k", o.k)->required();
  construct->add_option("--d", o.d);
  construct->add_option("--alpha", o.alpha);
  construct->add_option("--beta", o.beta);
  construct->add_option("--M", o.M);
  construct->add_option("--q", o.q);
  construct->add_option("--seed", o.seed);
  add_common(construct);

  auto* repair = app.add_subcommand("repair", "functional repair of one node");
  repair->add_option("--state", o.state_file, "state JSON file")->required();
  repair->add_option("--failed", o.failed)->required();
  repair->add_option("--helpers", o.helpers, "comma-separated helper ids");
  repair->add_option("--repairing", o.repairing, "comma-separated repairing node ids");
  repair->add_option("--seed", o.seed);
  repair->add_option("--transcript", o.transcript, "transcript JSON output");
  add_common(repair);

  auto* psr = app.add_subcommand("psr", "probability of successful repair vs t");
  psr->add_option("--d1", o.d1)->required();
  psr->add_option("--d2", o.d2);
  psr->add_option("--beta", o.beta)->required();
  psr->add_option("--p", o.p)->required();
  psr->add_option("--q", o.q);
  psr->add_option("--tmin", o.tmin);
  psr->add_option("--tmax", o.tmax)->required();
  psr->add_option("--trials", o.trials);
  psr->add_option("--seed", o.seed);
  add_common(psr);

  auto* optimize = app.add_subcommand("optimize", "minimize practical repair bandwidth");
  optimize->add_option("--n", o.n)->required();
  optimize->add_option("--k", o.k)->required();
  optimize->add_option("--dtot", o.dtot)->required();
  optimize->add_option("--M", o.M)->required();
  optimize->add_option("--mode", o.mode)->check(CLI::IsMember({"msr", "mbr"}));
  optimize->add_option("--p", o.p, "single p, list, or range a:b:step")->required();
  optimize->add_option("--delta", o.delta)->required();
  optimize->add_option("--q", o.q);
  optimize->add_option("--t-cap", o.t_cap);
  optimize->add_option("--trials", o.trials, "empirical verification trials");
  optimize->add_option("--seed", o.seed);
  add_common(optimize);

  auto* sweep = app.add_subcommand("sweep", "optimize across erasure probabilities");
  sweep->add_option("--n", o.n)->required();
  sweep->add_option("--k", o.k)->required();
  sweep->add_option("--dtot", o.dtot)->required();
  sweep->add_option("--M", o.M)->required();
  sweep->add_option("--mode", o.mode)->check(CLI::IsMember({"msr", "mbr"}));
  sweep->add_option("--p", o.p, "range a:b:step or list")->required();
  sweep->add_option("--delta", o.delta)->required();
  sweep->add_option("--q", o.q);
  sweep->add_option("--t-cap", o.t_cap);
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  auto emit = [&](const std::string& csv) {
    write_output(o.output, o.format == "json" ? csv_to_json(csv) : csv);
  };

  try {
    if (tradeoff->parsed()) {
      SystemParams sp;
      sp.n = o.n;
      sp.k = o.k;
      sp.d = o.d;
      sp.M = parse_rational(o.M);
      std::ostringstream os;
      os << "gamma_prime,alpha,segment_index,p\n";
      for (const Rational& p : parse_p_list(o.p)) {
        sp.p = p;
        if (sp.k < 1 || sp.k > sp.d || sp.d > sp.n - 1)
          throw ValidationError("need 1 <= k <= d <= n-1");
        if (sp.p < 0 || sp.p >= 1) throw ValidationError("p must be in [0,1)");
        Rational lo = analysis::breakpoint_f(sp.k - 1, sp) / (1 - p);
        Rational hi = analysis::breakpoint_f(0, sp) / (1 - p);
        Rational span = hi - lo;
        int samples = std::max(o.points, 2);
        for (int i = 0; i <= samples; ++i) {
          Rational g = lo + span * i / samples;
          auto ta = analysis::tradeoff_alpha(g, sp, o.printed_g);
          os << fmt(to_double(g)) << "," << fmt(to_double(ta.alpha)) << ","
             << ta.segment << "," << fmt(to_double(p)) << "\n";
        }
      }
      emit(os.str());
      std::cerr << "tradeoff: wrote curve(s)\n";
    } else if (capacity->parsed()) {
      SystemParams sp;
      sp.n = o.n;
      sp.k = o.k;
      sp.d = o.d;
      sp.h = o.h;
      sp.alpha = parse_rational(o.alpha);
      sp.p = parse_rational(o.p);
      if (sp.k < 1 || sp.k > sp.d || sp.d > sp.n - 1)
        throw ValidationError("need 1 <= k <= d <= n-1");
      if (sp.p < 0 || sp.p >= 1) throw ValidationError("p must be in [0,1)");
      Rational c = analysis::capacity(sp, parse_rational(o.beta_sent));
      std::cout << to_string(c) << " (" << fmt(to_double(c)) << ")\n";
    } else if (flowg->parsed()) {
      std::ifstream f(o.schedule_file);
      if (!f) throw ValidationError("cannot read " + o.schedule_file);
      auto j = nlohmann::json::parse(f);
      SystemParams sp;
      const auto& jp = j.at("params");
      sp.n = jp.at("n").get<int>();
      sp.k = jp.at("k").get<int>();
      sp.d = jp.at("d").get<int>();
      sp.h = jp.value("h", 0);
      sp.alpha = parse_rational(jp.at("alpha").get<std::string>());
      sp.beta = parse_rational(jp.at("beta").get<std::string>());
      sp.p = parse_rational(jp.value("p", "0"));
      if (jp.contains("alpha_prime"))
        sp.alpha_prime = parse_rational(jp.at("alpha_prime").get<std::string>());
      RepairSchedule sched;
      for (const auto& js : j.value("stages", nlohmann::json::array())) {
        RepairStage st;
        st.failed = js.at("failed").get<int>();
        st.helpers = js.at("helpers").get<std::vector<int>>();
        st.repairing_participates = js.value("repairing", false);
        sched.stages.push_back(std::move(st));
      }
      auto dc = j.at("dc").get<std::vector<int>>();
      FlowGraph g = build_repair_graph(sp, sched, dc);
      CutResult cut = min_cut(g);
      nlohmann::json out;
      out["infinite"] = cut.infinite;
      out["cut"] = cut.infinite ? "inf" : to_string(cut.value);
      out["cut_double"] = cut.infinite ? 0.0 : to_double(cut.value);
      for (int v : cut.source_side)
        out["source_side"].push_back(g.vertex_label(v));
      write_output(o.output, out.dump(2) + "\n");
    } else if (construct->parsed()) {
      uint64_t seed = resolve_seed(o.seed);
      StorageState st;
      if (o.type == "msr-vandermonde") {
        st = construct_msr_vandermonde(o.n, o.k, Field::make(o.q));
      } else {
        SystemParams sp;
        sp.n = o.n;
        sp.k = o.k;
        sp.d = o.d;
        sp.alpha = parse_rational(o.alpha);
        sp.beta = parse_rational(o.beta);
        sp.M = parse_rational(o.M);
        st = init_random_code(sp, Field::make(o.q), seed);
      }
      write_output(o.output, st.to_json() + "\n");
      std::cerr << "construct: n=" << st.params.n << " k=" << st.params.k
                << " M=" << st.file_dim << " q=" << st.field.q() << "\n";
    } else if (repair->parsed()) {
      uint64_t seed = resolve_seed(o.seed);
      std::ifstream f(o.state_file);
      if (!f) throw ValidationError("cannot read " + o.state_file);
      std::stringstream buf;
      buf << f.rdbuf();
      StorageState st = StorageState::from_json(buf.str());
      std::vector<int> hids, rids;
      auto parse_ids = [](const std::string& s, std::vector<int>& out) {
        std::istringstream is(s);
        std::string item;
        while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
      };
      if (!o.helpers.empty()) parse_ids(o.helpers, hids);
      if (!o.repairing.empty()) parse_ids(o.repairing, rids);
      if (hids.empty())
        for (const auto& [id, m] : st.nodes)
          if (id != o.failed && (int)hids.size() < st.params.d)
            hids.push_back(id);
      RepairOutcome out = functional_repair(st, o.failed, hids, seed, rids);
      write_output(o.output, out.state.to_json() + "\n");
      if (!o.transcript.empty())
        write_output(o.transcript, out.transcript.to_json() + "\n");
      std::cerr << "repair: node " << o.failed << " regenerated\n";
    } else if (psr->parsed()) {
      uint64_t seed = resolve_seed(o.seed);
      int beta = std::stoi(o.beta);
      emit(channel::psr_table_csv(o.d1, o.d2, beta, parse_rational(o.p), o.q,
                                  o.tmin, o.tmax, o.trials, seed));
      std::cerr << "psr: t in [" << o.tmin << "," << o.tmax << "]\n";
    } else if (optimize->parsed() || sweep->parsed()) {
      SystemParams sp;
      sp.n = o.n;
      sp.k = o.k;
      sp.d = o.dtot;
      sp.M = parse_rational(o.M);
      if (sp.k < 1 || sp.k > o.dtot || o.dtot > sp.n - 1)
        throw ValidationError("need 1 <= k <= dtot <= n-1");
      CodeMode mode = o.mode == "msr" ? CodeMode::MSR : CodeMode::MBR;
      Rational delta = parse_rational(o.delta);
      auto ps_list = parse_p_list(o.p);
      bool with_empirical = optimize->parsed();
      uint64_t seed = with_empirical ? resolve_seed(o.seed) : 0;
      std::ostringstream os;
      os << (with_empirical
                 ? "p,d1,d2,t,gamma_hat,scale,ps_analytic,ps_empirical\n"
                 : "p,d1,d2,t,gamma_hat,scale,ps_analytic,feasible\n");
      auto rows = optimizer::sweep(ps_list, delta, o.dtot, sp, mode, o.q, o.t_cap);
      bool any_feasible = false;
      for (const auto& row : rows) {
        os << fmt(to_double(row.p)) << ",";
        if (!row.feasible) {
          os << ",,,," << "," << (with_empirical ? "," : ",0") << "\n";
          continue;
        }
        any_feasible = true;
        const PracticalPlan& pl = row.plan;
        os << pl.d1 << "," << pl.d2 << "," << pl.t << "," << pl.gamma_hat
           << "," << pl.scale.str() << "," << fmt(pl.achieved_ps);
        if (with_empirical) {
          auto emp = channel::simulate_repair({pl.d1, pl.d2, pl.t, pl.beta},
                                              to_double(row.p),
                                              Field::make(o.q), o.trials, seed);
          os << "," << fmt(emp.p_s);
        } else {
          os << ",1";
        }
        os << "\n";
      }
      emit(os.str());
      if (!any_feasible) throw InfeasibleError("every sweep point infeasible");
      std::cerr << (with_empirical ? "optimize" : "sweep") << ": "
                << rows.size() << " row(s)\n";
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
