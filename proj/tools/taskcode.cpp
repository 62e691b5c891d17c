#include "pool.hpp"

#include "taskcode/cost.hpp"
#include "taskcode/io.hpp"
#include "taskcode/lossy.hpp"
#include "taskcode/oracle.hpp"
#include "taskcode/rate_distortion.hpp"
#include "taskcode/renyi.hpp"
#include "taskcode/selftest.hpp"
#include "taskcode/task_encoder.hpp"
#include "taskcode/universal.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace tc = taskcode;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// "2..12", "2,4,8" or "5"
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots)), hi = std::stoi(item.substr(dots + 2));
        if (hi < lo) throw tc::InvalidArgument("empty range '" + item + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw tc::InvalidArgument("cannot parse '" + item + "' as an integer or a range like 2..12");
    }
  }
  if (out.empty()) throw tc::InvalidArgument("empty list '" + text + "'");
  for (int v : out) {
    if (v < 1) throw tc::InvalidArgument("block lengths must be positive");
  }
  return out;
}

struct Globals {
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool normalize = false;
};

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw tc::InvalidArgument("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// One CSV row per cell; cells failing numerically are kept with their status.
struct Row {
  std::string line;
  bool failed = false;
};

std::string join(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ',';
    s += fields[i];
  }
  return s;
}

Row failed_row(std::vector<std::string> fields, std::size_t width, const tc::NumericFailure& e) {
  while (fields.size() + 1 < width) fields.emplace_back();
  fields.emplace_back(dynamic_cast<const tc::InfeasibleError*>(&e) ? "infeasible" : "no-convergence");
  return Row{join(fields), true};
}

int write_rows(const std::string& path, const std::vector<std::string>& header, const std::vector<Row>& rows) {
  Sink sink(path);
  auto& os = sink.out();
  os << join(header) << '\n';
  bool failed = false;
  for (const auto& r : rows) {
    os << r.line << '\n';
    failed |= r.failed;
  }
  os.flush();
  if (failed) std::cerr << "warning: some cells failed numerically; see the status column\n";
  return failed ? kNumeric : kOk;
}

tc::Pmf load_pmf(const std::string& path, const Globals& g) { return tc::pmf_from_json(tc::load_json(path), g.normalize); }
tc::JointPmf load_joint(const std::string& path, const Globals& g) {
  return tc::joint_from_json(tc::load_json(path), g.normalize);
}

void print_bounds(const tc::MomentBounds& b) {
  std::cout << "lower_bound " << num(b.lower) << '\n';
  std::cout << "upper_bound " << (b.upper ? num(*b.upper) : std::string("none")) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task encoding: Renyi measures, encoders, oracles and sweeps"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized routines")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--normalize", g.normalize, "Rescale input PMFs whose mass is not 1");

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Renyi entropy H_{1/(1+rho)}(P), or H(X|Y) with --joint");
  std::string e_pmf, e_joint;
  std::vector<double> e_rho{1.0};
  auto* e_pmf_opt = entropy->add_option("--pmf", e_pmf, "PMF JSON file")->check(CLI::ExistingFile);
  entropy->add_option("--joint", e_joint, "Joint PMF JSON file")->check(CLI::ExistingFile)->excludes(e_pmf_opt);
  entropy->add_option("--rho", e_rho, "Moment order(s); one value printed per line")->check(CLI::PositiveNumber);

  // divergence
  auto* divergence = app.add_subcommand("divergence", "Sundaresan, Renyi or KL divergence of P from Q");
  std::string d_p, d_q, d_kind = "sundaresan";
  std::vector<double> d_alpha{0.5};
  divergence->add_option("--p", d_p, "PMF JSON for P")->required()->check(CLI::ExistingFile);
  divergence->add_option("--q", d_q, "PMF JSON for Q")->required()->check(CLI::ExistingFile);
  divergence->add_option("--alpha", d_alpha, "Order(s), positive and not 1")->check(CLI::PositiveNumber);
  divergence->add_option("--kind", d_kind)->check(CLI::IsMember({"sundaresan", "renyi", "kl"}))->capture_default_str();

  // encode
  auto* encode = app.add_subcommand("encode", "Build the budgeted-partition encoder and report its moment");
  std::string n_pmf, n_joint, n_design, n_out, n_eval;
  double n_rho = 1.0;
  std::size_t n_m = 0;
  auto* n_pmf_opt = encode->add_option("--pmf", n_pmf, "PMF JSON file")->check(CLI::ExistingFile);
  encode->add_option("--joint", n_joint, "Joint PMF JSON: encode X with side information Y")
      ->check(CLI::ExistingFile)
      ->excludes(n_pmf_opt);
  encode->add_option("--rho", n_rho)->check(CLI::PositiveNumber)->capture_default_str();
  encode->add_option("-M,--max-descriptions", n_m, "Number of descriptions")->required()->check(CLI::PositiveNumber);
  encode->add_option("--design", n_design, "Build for this PMF instead and bound the mismatch")->check(CLI::ExistingFile);
  encode->add_option("--out", n_out, "Write the encoder table as JSON");
  encode->add_option("--evaluate", n_eval, "Evaluate an encoder JSON instead of building one")->check(CLI::ExistingFile);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact minimum moment over all encoders (small alphabets)");
  std::string o_pmf, o_joint;
  double o_rho = 1.0;
  std::size_t o_m = 0;
  auto* o_pmf_opt = oracle->add_option("--pmf", o_pmf, "PMF JSON file")->check(CLI::ExistingFile);
  oracle->add_option("--joint", o_joint, "Joint PMF JSON file")->check(CLI::ExistingFile)->excludes(o_pmf_opt);
  oracle->add_option("--rho", o_rho)->check(CLI::PositiveNumber)->capture_default_str();
  oracle->add_option("-M,--max-descriptions", o_m)->required()->check(CLI::PositiveNumber);

  // sweep-rate
  auto* sweep = app.add_subcommand("sweep-rate", "Universal encoder moment against both bounds over n and R");
  std::string s_pmf, s_n = "2..12", s_csv;
  double s_rho = 1.0;
  std::vector<double> s_rate;
  sweep->add_option("--pmf", s_pmf)->required()->check(CLI::ExistingFile);
  sweep->add_option("--rho", s_rho)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--n", s_n, "Block lengths, e.g. 2..12 or 4,8")->capture_default_str();
  sweep->add_option("--rate", s_rate, "Rate(s) in bits per task")->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--csv", s_csv, "Output CSV (default stdout)");

  // rd-curve
  auto* rd = app.add_subcommand("rd-curve", "R_rho(P, D) under Hamming distortion on a grid of D");
  double r_p = 0.25, r_dmax = 0.5;
  int r_steps = 100;
  std::vector<double> r_rho;
  std::string r_method = "closed", r_pmf, r_csv;
  auto* r_p_opt = rd->add_option("--p", r_p, "P(first symbol) of a binary source")->check(CLI::Range(0.0, 1.0));
  rd->add_option("--pmf", r_pmf, "PMF JSON (numeric method only)")->check(CLI::ExistingFile)->excludes(r_p_opt);
  rd->add_option("--rho", r_rho, "Moment order(s), one column each")->required()->check(CLI::PositiveNumber);
  rd->add_option("--dmax", r_dmax)->check(CLI::NonNegativeNumber)->capture_default_str();
  rd->add_option("--steps", r_steps, "Grid intervals; steps+1 points from 0 to dmax")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rd->add_option("--method", r_method)->check(CLI::IsMember({"closed", "numeric"}))->capture_default_str();
  rd->add_option("--csv", r_csv, "Output CSV (default stdout)");

  // universal-sim
  auto* usim = app.add_subcommand("universal-sim", "Universal (type-class) encoder: moment against its bound");
  std::string u_pmf, u_si, u_n = "2..12", u_csv;
  double u_rho = 1.0;
  std::vector<double> u_rate;
  auto* u_pmf_opt = usim->add_option("--pmf", u_pmf)->check(CLI::ExistingFile);
  usim->add_option("--si", u_si, "Joint PMF JSON: use the side-information encoder")
      ->check(CLI::ExistingFile)
      ->excludes(u_pmf_opt);
  usim->add_option("--n", u_n)->capture_default_str();
  usim->add_option("--rate", u_rate)->required()->check(CLI::NonNegativeNumber);
  usim->add_option("--rho", u_rho)->check(CLI::PositiveNumber)->capture_default_str();
  usim->add_option("--csv", u_csv, "Output CSV (default stdout)");

  // lossy-sim
  auto* lsim = app.add_subcommand("lossy-sim", "Lossy codec under Hamming distortion: moment and fidelity");
  std::string l_pmf, l_n = "2..8", l_csv;
  double l_rho = 1.0;
  std::vector<double> l_rate, l_dist;
  lsim->add_option("--pmf", l_pmf)->required()->check(CLI::ExistingFile);
  lsim->add_option("--n", l_n)->capture_default_str();
  lsim->add_option("--rate", l_rate)->required()->check(CLI::NonNegativeNumber);
  lsim->add_option("--distortion", l_dist, "Distortion level(s) D")->required()->check(CLI::NonNegativeNumber);
  lsim->add_option("--rho", l_rho)->check(CLI::PositiveNumber)->capture_default_str();
  lsim->add_option("--csv", l_csv, "Output CSV (default stdout)");

  // cost-sim
  auto* csim = app.add_subcommand("cost-sim", "Expected task cost of universal encoders against the converse");
  std::string c_pmf, c_costs, c_csv;
  int c_nmax = 10;
  std::vector<double> c_rate;
  csim->add_option("--pmf", c_pmf)->required()->check(CLI::ExistingFile);
  csim->add_option("--costs", c_costs, "Cost JSON file")->required()->check(CLI::ExistingFile);
  csim->add_option("--rate", c_rate)->required()->check(CLI::NonNegativeNumber);
  csim->add_option("--nmax", c_nmax, "Block lengths 1..nmax")->check(CLI::PositiveNumber)->capture_default_str();
  csim->add_option("--csv", c_csv, "Output CSV (default stdout)");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Reduced-size invariant checks of every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*entropy) {
      if (e_pmf.empty() == e_joint.empty()) throw tc::InvalidArgument("give exactly one of --pmf or --joint");
      if (!e_pmf.empty()) {
        const auto p = load_pmf(e_pmf, g);
        for (double rho : e_rho) std::cout << num(tc::renyi_entropy(p, rho)) << '\n';
      } else {
        const auto j = load_joint(e_joint, g);
        for (double rho : e_rho) std::cout << num(tc::conditional_renyi(j, rho)) << '\n';
      }
      return kOk;
    }

    if (*divergence) {
      const auto p = load_pmf(d_p, g), q = load_pmf(d_q, g);
      if (d_kind == "kl") {
        std::cout << num(tc::kl_divergence(p, q)) << '\n';
        return kOk;
      }
      for (double a : d_alpha) {
        const double v = d_kind == "renyi" ? tc::renyi_divergence(p, q, a) : tc::sundaresan_divergence(p, q, a);
        std::cout << num(v) << '\n';
      }
      return kOk;
    }

    if (*encode) {
      if (n_pmf.empty() == n_joint.empty()) throw tc::InvalidArgument("give exactly one of --pmf or --joint");
      if (!n_joint.empty()) {
        if (!n_design.empty() || !n_eval.empty()) throw tc::InvalidArgument("--design and --evaluate need --pmf");
        const auto j = load_joint(n_joint, g);
        const auto enc = tc::build_si_encoder(j, n_rho, n_m);
        std::cout << "moment " << num(tc::moment_si(enc, j, n_rho)) << '\n';
        print_bounds(tc::side_info_bounds(j, n_rho, n_m));
        if (!n_out.empty()) {
          tc::Json out;
          out["M"] = n_m;
          for (std::size_t y = 0; y < j.y_size(); ++y) out["slices"][j.y_alphabet().label(y)] = tc::to_json(enc.slice(y));
          Sink sink(n_out);
          sink.out() << out.dump(2) << '\n';
        }
        return kOk;
      }
      const auto p = load_pmf(n_pmf, g);
      std::optional<tc::TaskEncoder> enc;
      if (!n_eval.empty()) {
        enc = tc::encoder_from_json(tc::load_json(n_eval), p.alphabet());
        if (enc->descriptions() != n_m) throw tc::InvalidArgument("encoder file has a different M than --max-descriptions");
      } else if (!n_design.empty()) {
        const auto q = load_pmf(n_design, g);
        auto me = tc::build_mismatched_encoder(p, q, n_rho, n_m);
        std::cout << "mismatch_bound " << num(me.bound) << '\n';
        enc = std::move(me.encoder);
      } else {
        enc = tc::build_encoder(p, n_rho, n_m);
      }
      std::cout << "moment " << num(tc::moment(*enc, p, n_rho)) << '\n';
      print_bounds(tc::moment_bounds(p, n_rho, n_m));
      std::cout << "descriptions_used " << enc->used_descriptions() << '\n';
      if (!n_out.empty()) {
        Sink sink(n_out);
        sink.out() << tc::to_json(*enc).dump(2) << '\n';
      }
      return kOk;
    }

    if (*oracle) {
      if (o_pmf.empty() == o_joint.empty()) throw tc::InvalidArgument("give exactly one of --pmf or --joint");
      if (!o_pmf.empty()) {
        const auto p = load_pmf(o_pmf, g);
        const auto r = tc::exact_min_moment(p, o_rho, o_m);
        std::cout << "min_moment " << num(r.min_moment) << '\n';
        std::cout << "blocks " << r.blocks_used << '\n';
        std::cout << "argmin " << tc::to_json(r.argmin)["blocks"].dump() << '\n';
      } else {
        const auto j = load_joint(o_joint, g);
        const auto r = tc::exact_min_moment_si(j, o_rho, o_m);
        std::cout << "min_moment " << num(r.min_moment) << '\n';
        for (std::size_t y = 0; y < r.per_y.size(); ++y) {
          if (!r.per_y[y]) continue;
          std::cout << "argmin[" << j.y_alphabet().label(y) << "] " << tc::to_json(r.per_y[y]->argmin)["blocks"].dump()
                    << '\n';
        }
      }
      return kOk;
    }

    if (*sweep) {
      const auto p = load_pmf(s_pmf, g);
      const auto ns = parse_int_list(s_n);
      const std::vector<std::string> header{"n", "rate", "descriptions", "moment", "lower_bound", "universal_bound", "status"};
      const auto rows = taskcode::cli::run_ordered<Row>(ns.size() * s_rate.size(), g.jobs, [&](std::size_t i) {
        const double rate = s_rate[i / ns.size()];
        const int n = ns[i % ns.size()];
        std::vector<std::string> f{std::to_string(n), num(rate)};
        try {
          f.push_back(std::to_string(tc::BlockCodeParams{n, rate}.descriptions()));
          const tc::UniversalCode code({n, rate}, p.alphabet());
          f.push_back(num(code.moment(p, s_rho)));
          f.push_back(num(tc::block_moment_lower_bound(n, rate, s_rho, p)));
          f.push_back(num(tc::universal_moment_bound(n, rate, s_rho, p)));
          f.emplace_back("ok");
          return Row{join(f)};
        } catch (const tc::NumericFailure& e) {
          return failed_row(f, header.size(), e);
        }
      });
      return write_rows(s_csv, header, rows);
    }

    if (*rd) {
      if (r_method == "closed" && !r_pmf.empty()) throw tc::InvalidArgument("--pmf needs --method numeric");
      const auto p = r_pmf.empty() ? tc::make_pmf(tc::Alphabet::range(2), std::vector<double>{r_p, 1.0 - r_p})
                                   : load_pmf(r_pmf, g);
      const auto dist = tc::Distortion::hamming(p.alphabet());
      std::vector<std::string> header{"D"};
      for (double rho : r_rho) header.push_back("rho_" + num(rho));
      const std::size_t cols = r_rho.size(), cells = static_cast<std::size_t>(r_steps + 1) * cols;
      auto level = [&](std::size_t k) { return r_dmax * static_cast<double>(k) / r_steps; };
      const auto values = taskcode::cli::run_ordered<double>(cells, g.jobs, [&](std::size_t i) {
        const double d = level(i / cols), rho = r_rho[i % cols];
        if (r_method == "closed") return tc::binary_hamming_renyi_rd(r_p, d, rho);
        tc::RenyiRdOptions opts;
        opts.seed = g.seed;
        return tc::renyi_rd(p, dist, d, rho, opts);
      });
      std::vector<Row> rows;
      for (std::size_t k = 0; k <= static_cast<std::size_t>(r_steps); ++k) {
        std::vector<std::string> f{num(level(k))};
        for (std::size_t c = 0; c < cols; ++c) f.push_back(num(values[k * cols + c]));
        rows.push_back(Row{join(f)});
      }
      return write_rows(r_csv, header, rows);
    }

    if (*usim) {
      if (u_pmf.empty() == u_si.empty()) throw tc::InvalidArgument("give exactly one of --pmf or --si");
      const auto ns = parse_int_list(u_n);
      const std::vector<std::string> header{"n", "rate", "rho", "descriptions", "moment", "bound", "status"};
      std::optional<tc::Pmf> p;
      std::optional<tc::JointPmf> joint;
      if (!u_pmf.empty()) p = load_pmf(u_pmf, g);
      else joint = load_joint(u_si, g);
      const auto rows = taskcode::cli::run_ordered<Row>(ns.size() * u_rate.size(), g.jobs, [&](std::size_t i) {
        const double rate = u_rate[i / ns.size()];
        const int n = ns[i % ns.size()];
        std::vector<std::string> f{std::to_string(n), num(rate), num(u_rho)};
        try {
          const tc::BlockCodeParams params{n, rate};
          f.push_back(std::to_string(params.descriptions()));
          if (p) {
            const tc::UniversalCode code(params, p->alphabet());
            f.push_back(num(code.moment(*p, u_rho)));
            f.push_back(num(tc::universal_moment_bound(n, rate, u_rho, *p)));
          } else {
            const auto enc = tc::build_universal_si_encoder(params, joint->x_alphabet(), joint->y_alphabet());
            f.push_back(num(tc::moment_si(enc, tc::product_joint(*joint, n), u_rho)));
            f.push_back(num(tc::universal_si_moment_bound(n, rate, u_rho, *joint)));
          }
          f.emplace_back("ok");
          return Row{join(f)};
        } catch (const tc::NumericFailure& e) {
          return failed_row(f, header.size(), e);
        }
      });
      return write_rows(u_csv, header, rows);
    }

    if (*lsim) {
      const auto p = load_pmf(l_pmf, g);
      const auto dist = tc::Distortion::hamming(p.alphabet());
      const auto ns = parse_int_list(l_n);
      const std::vector<std::string> header{"n", "rate", "D", "descriptions", "used", "moment", "worst_distortion", "status"};
      const std::size_t per_rate = ns.size() * l_dist.size();
      const auto rows = taskcode::cli::run_ordered<Row>(per_rate * l_rate.size(), g.jobs, [&](std::size_t i) {
        const double rate = l_rate[i / per_rate];
        const double d = l_dist[(i % per_rate) / ns.size()];
        const int n = ns[i % ns.size()];
        std::vector<std::string> f{std::to_string(n), num(rate), num(d)};
        try {
          const auto codec = tc::build_lossy_codec(n, rate, dist, d);
          f.push_back(std::to_string(codec.descriptions));
          f.push_back(std::to_string(codec.phi.size()));
          f.push_back(num(tc::lossy_moment(codec, p, l_rho)));
          f.push_back(num(tc::codec_worst_distortion(codec, dist)));
          f.emplace_back("ok");
          return Row{join(f)};
        } catch (const tc::NumericFailure& e) {
          return failed_row(f, header.size(), e);
        }
      });
      return write_rows(l_csv, header, rows);
    }

    if (*csim) {
      const auto p = load_pmf(c_pmf, g);
      const auto cost = tc::cost_from_json(tc::load_json(c_costs));
      if (!(cost.alphabet() == p.alphabet())) throw tc::InvalidArgument("cost and PMF alphabets differ");
      const std::vector<std::string> header{"n", "rate", "cost_moment", "converse_bound", "expected_cost", "status"};
      const auto nmax = static_cast<std::size_t>(c_nmax);
      const auto rows = taskcode::cli::run_ordered<Row>(nmax * c_rate.size(), g.jobs, [&](std::size_t i) {
        const double rate = c_rate[i / nmax];
        const int n = static_cast<int>(i % nmax) + 1;
        std::vector<std::string> f{std::to_string(n), num(rate)};
        try {
          const auto enc = tc::build_universal_encoder({n, rate}, p.alphabet());
          f.push_back(num(tc::cost_moment(enc, p, cost, n)));
          f.push_back(num(tc::cost_converse_bound(p, cost, rate, n)));
          f.push_back(num(cost.expectation(p)));
          f.emplace_back("ok");
          return Row{join(f)};
        } catch (const tc::NumericFailure& e) {
          return failed_row(f, header.size(), e);
        }
      });
      return write_rows(c_csv, header, rows);
    }

    if (*selftest) {
      return tc::run_selftest(g.seed, std::cout) ? kOk : kNumeric;
    }
  } catch (const tc::NumericFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const tc::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input JSON: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
