// verify: run randomized verification campaigns for matrix-entropy
// convexity statements and report margins.
//
// Exit codes: 0 all pass, 1 violation, 2 usage error, 3 numeric error.

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "mxent/campaign.hpp"
#include "mxent/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

void print_header() {
  std::cout << std::left << std::setw(6) << "camp" << std::setw(14) << "function" << std::right
            << std::setw(9) << "samples" << std::setw(12) << "violations" << std::setw(10)
            << "errors" << std::setw(16) << "worst margin" << std::setw(11) << "time [s]"
            << "  outcome\n";
}

void print_row(const mxent::CampaignReport& r) {
  std::string fn;
  switch (r.config.campaign) {
    case mxent::CampaignId::C5: fn = "t_log_t"; break;
    case mxent::CampaignId::C6: fn = "power(" + std::to_string(r.config.p).substr(0, 4) + ")"; break;
    case mxent::CampaignId::C7: fn = "-"; break;
    case mxent::CampaignId::C8: fn = "t_log_t/log"; break;
    case mxent::CampaignId::C9: fn = "cube"; break;
    default: fn = r.config.scalar_function().label();
  }
  char worst[32];
  if (r.worst_margin)
    std::snprintf(worst, sizeof worst, "%.6e", *r.worst_margin);
  else
    std::snprintf(worst, sizeof worst, "n/a");
  std::cout << std::left << std::setw(6) << mxent::to_string(r.config.campaign) << std::setw(14) << fn
            << std::right << std::setw(9) << r.config.samples << std::setw(12) << r.violations
            << std::setw(10) << r.errors.size() << std::setw(16) << worst << std::setw(11)
            << std::fixed << std::setprecision(3) << r.wall_time << std::defaultfloat << "  "
            << r.outcome << '\n';
}

int exit_code(const std::vector<mxent::CampaignReport>& reports) {
  bool violation = false;
  for (const auto& r : reports) {
    if (!r.errors.empty()) return kExitNumeric;
    violation = violation || r.violations > 0;
  }
  return violation ? kExitViolation : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of matrix-entropy convexity inequalities"};

  mxent::CampaignConfig cfg;
  std::string campaign;
  bool all = false;
  std::string out_path;
  bool timing = false;
  std::string channel = "mixed";

  app.add_option("--campaign", campaign, "Campaign to run (C1..C9)");
  app.add_flag("--all", all, "Run C1..C8 and print a summary table");
  app.add_option("--d1", cfg.d1, "Dimension of the first factor")->capture_default_str();
  app.add_option("--d2", cfg.d2, "Dimension of the second factor")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Samples per campaign")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Pass threshold: margin >= -tolerance")
      ->capture_default_str();
  app.add_flag("--relative-tolerance", cfg.relative_tolerance,
               "Scale margins by 1/(1 + ||inputs||_F)");
  app.add_option("--function", cfg.function,
                 "t_log_t | power | log | identity | square | cube")
      ->capture_default_str();
  app.add_option("--p", cfg.p, "Exponent for power and for C6")->capture_default_str();
  app.add_option("--weights", cfg.weights, "Convexity weights in (0,1)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--eig-lo", cfg.eig_lo, "Lower end of random spectra")->capture_default_str();
  app.add_option("--eig-hi", cfg.eig_hi, "Upper end of random spectra")->capture_default_str();
  app.add_flag("--normalize", cfg.normalize, "Normalize random states to unit trace");
  app.add_option("--channel", channel, "C3 channel family: mixed | pinching | pi_1 | general")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  app.add_option("--out", out_path, "Write the JSON report to this path");
  app.add_flag("--timing", timing, "Include wall_time in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::vector<mxent::CampaignConfig> configs;
  try {
    cfg.channel = mxent::parse_channel_family(channel);
    if (all == !campaign.empty()) throw mxent::InputError("give exactly one of --campaign or --all");
    if (all) {
      for (int c = 0; c < 8; ++c) {
        auto each = cfg;
        each.campaign = static_cast<mxent::CampaignId>(c);
        configs.push_back(each);
      }
    } else {
      cfg.campaign = mxent::parse_campaign(campaign);
      configs.push_back(cfg);
    }
    for (const auto& c : configs) c.validate();
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<mxent::CampaignReport> reports;
  print_header();
  for (const auto& c : configs) {
    reports.push_back(mxent::run_campaign(c));
    print_row(reports.back());
    for (const auto& err : reports.back().errors)
      std::cerr << "  sample " << err.sample << ": " << err.message << '\n';
  }
  if (!all && configs.front().campaign == mxent::CampaignId::C9)
    std::cout << (reports.front().violations > 0
                      ? "C9: counterexample to joint convexity found for f = t^3\n"
                      : "C9: no counterexample found (inconclusive)\n");

  if (!out_path.empty()) {
    try {
      if (all) {
        mxent::Json doc{{"campaigns", mxent::Json::array()}};
        for (const auto& r : reports) doc["campaigns"].push_back(mxent::report_to_json(r, timing));
        mxent::write_json(doc, out_path);
      } else {
        mxent::emit_report(reports.front(), out_path, timing);
      }
    } catch (const std::exception& e) {
      std::cerr << "verify: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return exit_code(reports);
}
