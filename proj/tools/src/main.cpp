#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "credal/error.hpp"
#include "credal/version.hpp"

namespace {

using credal::cli::Json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

/// Effective value of every option of `app` except help, for the manifest.
void collect_flags(const CLI::App& app, Json& out) {
  for (const CLI::Option* opt : app.get_options()) {
    if (opt == app.get_help_ptr() || opt == app.get_version_ptr() || opt->get_lnames().empty()) continue;
    const std::string& key = opt->get_lnames().front();
    if (opt->get_expected_max() == 0) {
      out[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      out[key] = results.size() == 1 ? Json(results.front()) : Json(results);
    } else {
      out[key] = opt->get_default_str();
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order credal sets, TV-uniform measures and HOCS-ratio tests", "credal"};
  app.set_version_flag("--version", std::string(credal::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out_dir = "credal-out";
  std::string format = "csv";
  bool svg = false;
  app.add_option("--seed", seed, "Master seed (falls back to $CREDAL_SEED, then 0)")->envname("CREDAL_SEED");
  app.add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  CLI::Option* out_opt = app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--svg", svg, "Also render SVG line charts");

  credal::cli::BinomialTestArgs bt;
  CLI::App* bt_cmd = app.add_subcommand("binomial-test", "HOCS-ratio curve for k heads in n tosses");
  bt_cmd->add_option("--n", bt.n, "Tosses")->check(CLI::Range(1, 100000))->capture_default_str();
  bt_cmd->add_option("--k", bt.k, "Observed heads")->check(CLI::NonNegativeNumber)->capture_default_str();
  bt_cmd->add_option("--resolution", bt.resolution, "Initial quadrature panels (node intervals for node-sum)")
      ->capture_default_str();
  bt_cmd->add_option("--rule", bt.rule, "Quadrature rule")
      ->check(CLI::IsMember({"gauss", "node-sum"}))
      ->capture_default_str();
  bt_cmd->add_option("--grid-points", bt.grid_points, "Points of the HOCS curve on [0, 1]")->capture_default_str();

  credal::cli::TvuDensityArgs td;
  CLI::App* td_cmd = app.add_subcommand("tvu-density", "TV-uniform density and outcome probabilities of a family");
  td_cmd->add_option("--family", td.family, "Family")
      ->check(CLI::IsMember({"binomial", "coin-matching"}))
      ->capture_default_str();
  td_cmd->add_option("--n", td.n, "Tosses (binomial)")->check(CLI::Range(1, 100000))->capture_default_str();
  td_cmd->add_option("--points", td.points, "Density grid points")->capture_default_str();
  td_cmd->add_option("--resolution", td.resolution, "Initial quadrature panels")->capture_default_str();
  td_cmd->add_option("--rule", td.rule, "Quadrature rule")
      ->check(CLI::IsMember({"gauss", "node-sum"}))
      ->capture_default_str();

  credal::cli::ConvergeArgs cv;
  CLI::App* cv_cmd = app.add_subcommand("converge", "Monte-Carlo tower of higher-order credal sets");
  cv_cmd->add_option("--n", cv.n, "Tosses")->check(CLI::Range(1, 100000))->capture_default_str();
  cv_cmd->add_option("--events", cv.events, "Head counts to track")->delimiter(',')->capture_default_str();
  cv_cmd->add_option("--base-samples", cv.base_samples, "First-order particles")->capture_default_str();
  cv_cmd->add_option("--order-samples", cv.order_samples, "Particles per higher order")->capture_default_str();
  cv_cmd->add_option("--max-order", cv.max_order, "Highest order")->capture_default_str();
  cv_cmd->add_option("--base-mode", cv.base_mode, "First-order sampling")
      ->check(CLI::IsMember({"tvu", "iid", "grid"}))
      ->capture_default_str();
  cv_cmd->add_option("--resolution", cv.resolution, "Initial quadrature panels")->capture_default_str();
  cv_cmd->add_flag("--tower", cv.tower, "Also export every particle as tower.jsonl");

  credal::cli::UrnArgs urn;
  CLI::App* urn_cmd = app.add_subcommand("urn", "Exact predictive for an urn of unknown composition");
  urn_cmd->add_option("--history", urn.history, "Drawn colors, in order")->delimiter(',');
  urn_cmd->add_option("--colors", urn.colors, "Urn colors")->delimiter(',')->capture_default_str();
  urn_cmd->add_option("--balls", urn.balls, "Balls in the urn")->check(CLI::PositiveNumber)->capture_default_str();
  urn_cmd->add_option("--mode", urn.mode, "Arithmetic")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();

  credal::cli::DilationArgs dl;
  CLI::App* dl_cmd = app.add_subcommand("dilation", "Dilation of P(M | H1) in the two-coin example");
  dl_cmd->add_option("--grid", dl.grid, "First-order grid points")->capture_default_str();
  dl_cmd->add_option("--orders", dl.orders, "Highest order")->capture_default_str();
  dl_cmd->add_option("--samples", dl.samples, "Particles per higher order")->capture_default_str();
  dl_cmd->add_option("--weighting", dl.weighting, "Merged-member weighting")
      ->check(CLI::IsMember({"count-once", "multiplicity"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::uint64_t resolved_seed = seed.value_or(0);
  const auto fmt_kind = format == "json" ? credal::cli::Format::kJson : credal::cli::Format::kCsv;
  credal::cli::RunContext ctx(cmd->get_name(), out_dir, fmt_kind, resolved_seed, threads);

  Json flags = Json::object();
  collect_flags(app, flags);
  collect_flags(*cmd, flags);
  flags["seed"] = resolved_seed;
  ctx.set_flags(std::move(flags));
  ctx.set_argv(std::vector<std::string>(argv, argv + argc));

  try {
    if (cmd == bt_cmd) {
      if (bt.k > bt.n) throw CLI::ValidationError("--k", "must not exceed --n");
      credal::cli::run_binomial_test(bt, ctx, svg);
    } else if (cmd == td_cmd) {
      credal::cli::run_tvu_density(td, ctx, svg);
    } else if (cmd == cv_cmd) {
      credal::cli::run_converge(cv, ctx, svg);
    } else if (cmd == urn_cmd) {
      const Json result = credal::cli::run_urn(urn);
      std::cout << result.dump() << '\n';
      if (out_opt->count() == 0) return 0;
      ctx.write_file("urn.json", result.dump(2) + "\n");
    } else {
      credal::cli::run_dilation(dl, ctx, svg);
    }
    ctx.write_manifest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const credal::Error& e) {
    std::cerr << fmt::format("error [{}]: {}\n", credal::to_string(e.code()), e.what());
    return credal::is_numeric_failure(e.code()) ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
