// Command-line front end: partition functions, Schur polynomials, state
// listings and the verification suite.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error.

#include <array>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ice/ice.hpp"

namespace {

enum Exit : int { ok = 0, failed = 1, usage = 2 };

struct Common {
  bool json = false;
};

int report(const ice::Outcomes& outcomes, const Common& common) {
  for (const auto& o : outcomes) {
    if (common.json) {
      std::cout << ice::to_json(o).dump() << '\n';
    } else {
      std::cout << (o.pass ? "PASS " : "FAIL ") << o.check;
      if (!o.detail.empty()) std::cout << ": " << o.detail;
      std::cout << '\n';
    }
  }
  return ice::all_pass(outcomes) ? ok : failed;
}

std::array<ice::IceKind, 3> parse_kind_triple(const std::string& s) {
  if (s.size() != 3) throw ice::PreconditionError("--kinds takes three letters from G and D, e.g. GGD");
  return {ice::parse_ice_kind(s.substr(0, 1)), ice::parse_ice_kind(s.substr(1, 1)),
          ice::parse_ice_kind(s.substr(2, 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact six-vertex ice models, Yang-Baxter checks and Schur polynomial identities"};
  app.require_subcommand(1);

  std::string kind = "gamma", lambda_text, format = "text", method = "bialternant";
  bool gt = false;

  auto* zfun = app.add_subcommand("zfun", "Partition function of lambda-boundary ice");
  zfun->add_option("--kind", kind)->check(CLI::IsMember({"gamma", "delta"}));
  zfun->add_option("--lambda", lambda_text, "Partition, e.g. 3,1,0")->required();
  zfun->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* schur = app.add_subcommand("schur", "Schur polynomial");
  schur->add_option("--lambda", lambda_text)->required();
  schur->add_option("--method", method)->check(CLI::IsMember({"bialternant", "pattern"}));

  auto* states = app.add_subcommand("states", "Enumerate states, one JSON document per line");
  states->add_option("--kind", kind)->check(CLI::IsMember({"gamma", "delta"}));
  states->add_option("--lambda", lambda_text)->required();
  states->add_flag("--gt", gt, "Print Gelfand-Tsetlin patterns instead of edge spins");

  auto* verify = app.add_subcommand("verify", "Run identity checks");
  verify->require_subcommand(1);
  Common common;
  verify->add_flag("--json", common.json, "One JSON report per line");

  std::string kinds_text, x_kind = "gamma", y_kind = "gamma";
  bool hatted = false, rank5 = false, no_rank5 = false;
  std::size_t samples = 100, cols = 4, max_n = 4;
  int max_part = 4;
  std::uint64_t seed = 1;

  auto* ybe = verify->add_subcommand("ybe", "Star-triangle relations and the parametrized Yang-Baxter equation");
  ybe->add_option("--kinds", kinds_text, "Restrict to one triple, e.g. GGD");
  ybe->add_flag("--hatted", hatted, "Check only the hatted form");

  auto* identities = verify->add_subcommand("identities", "Z(ice) = deformed denominator * s_lambda, both kinds");
  identities->add_option("--lambda", lambda_text)->required();
  auto* tokuyama = verify->add_subcommand("tokuyama", "Pattern sums against the ice and Tokuyama products");
  tokuyama->add_option("--lambda", lambda_text)->required();
  auto* statement_b = verify->add_subcommand("statement-b", "Cross-multiplied Gamma/Delta identity");
  statement_b->add_option("--lambda", lambda_text)->required();
  auto* symmetry = verify->add_subcommand("symmetry", "Swap symmetry and t-degrees of Z(Gamma)");
  symmetry->add_option("--lambda", lambda_text)->required();
  auto* bijection = verify->add_subcommand("bijection", "Pattern enumeration against brute force");
  bijection->add_option("--lambda", lambda_text)->required();
  bijection->add_option("--kind", kind)->check(CLI::IsMember({"gamma", "delta"}));

  auto* group_law = verify->add_subcommand("group-law", "Composition law on random free-fermionic weights");
  group_law->add_option("--samples", samples);
  group_law->add_option("--seed", seed);
  auto* three_term = verify->add_subcommand("three-term", "R from S and T: sufficiency and necessity");
  three_term->add_option("--samples", samples);
  three_term->add_option("--seed", seed);

  auto* yb_system = verify->add_subcommand("yb-system", "The eight Yang-Baxter system axioms");
  yb_system->add_option("--x", x_kind)->check(CLI::IsMember({"gamma", "delta"}));
  yb_system->add_option("--y", y_kind)->check(CLI::IsMember({"gamma", "delta"}));
  yb_system->add_flag("--hatted", hatted);

  auto* triangularity = verify->add_subcommand("triangularity", "R_XY P R_YX P is scalar");
  auto* transfer = verify->add_subcommand("transfer-commute", "Row-transfer matrices commute");
  transfer->add_option("--cols", cols)->check(CLI::Range(1, 6));

  auto* all = verify->add_subcommand("all", "Every check");
  all->add_option("--max-n", max_n)->check(CLI::Range(1, 5));
  all->add_option("--max-part", max_part)->check(CLI::Range(0, 6));
  all->add_option("--samples", samples);
  all->add_option("--seed", seed);
  all->add_flag("--rank5", rank5, "Add rank-5 spot checks (default when --max-n is 4)");
  all->add_flag("--no-rank5", no_rank5);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    auto lambda = [&] { return ice::Partition::parse(lambda_text); };

    if (*zfun) {
      ice::Polynomial z = ice::partition_function(ice::parse_ice_kind(kind), lambda());
      if (format == "json")
        std::cout << ice::to_json(z).dump() << '\n';
      else
        std::cout << ice::to_text(z) << '\n';
      return ok;
    }
    if (*schur) {
      auto l = lambda();
      std::cout << ice::to_text(method == "pattern" ? ice::schur_pattern_sum(l) : ice::schur_bialternant(l)) << '\n';
      return ok;
    }
    if (*states) {
      ice::BoundarySpec b{ice::parse_ice_kind(kind), lambda()};
      ice::for_each_state(b, [&](const ice::LatticeState& s) {
        std::cout << (gt ? ice::to_json(ice::state_to_gt(s)) : ice::to_json(s)).dump() << '\n';
      });
      return ok;
    }

    if (*ybe) {
      std::optional<std::array<ice::IceKind, 3>> triple;
      if (!kinds_text.empty()) triple = parse_kind_triple(kinds_text);
      return report(ice::verify_ybe(triple, hatted), common);
    }
    auto grid_item = [&](const std::string& name, auto check) {
      return report({ice::over_grid(name, std::vector<ice::LambdaData>{ice::lambda_data(lambda())}, check)}, common);
    };
    if (*identities) {
      auto d = ice::lambda_data(lambda());
      return report({ice::over_grid("gamma identity", std::vector{d},
                                    [](const ice::LambdaData& x) { return ice_identity_failure(ice::IceKind::Gamma, x); }),
                     ice::over_grid("delta identity", std::vector{d},
                                    [](const ice::LambdaData& x) { return ice_identity_failure(ice::IceKind::Delta, x); })},
                    common);
    }
    if (*tokuyama) return grid_item("tokuyama", ice::tokuyama_failure);
    if (*statement_b) return grid_item("statement-b", ice::statement_b_failure);
    if (*symmetry) return grid_item("symmetry and degree", ice::symmetry_failure);
    if (*bijection) {
      auto k = ice::parse_ice_kind(kind);
      return report({ice::over_grid("bijection " + kind, std::vector{lambda()},
                                    [k](const ice::Partition& l) { return ice::bijection_failure(k, l); })},
                    common);
    }
    if (*group_law) {
      if (!common.json) std::cout << "seed " << seed << '\n';
      return report(ice::verify_group_law(samples, seed), common);
    }
    if (*three_term) {
      if (!common.json) std::cout << "seed " << seed << '\n';
      return report(ice::verify_three_term(samples, seed), common);
    }
    if (*yb_system)
      return report(ice::verify_yb_system(ice::parse_ice_kind(x_kind), ice::parse_ice_kind(y_kind), hatted), common);
    if (*triangularity) return report(ice::verify_triangularity(), common);
    if (*transfer) return report(ice::verify_transfer_commute(cols), common);
    if (*all) {
      ice::SuiteOptions o;
      o.max_n = max_n;
      o.max_part = max_part;
      o.spot_rank5 = rank5 || (max_n >= 4 && !no_rank5);
      o.bijection_max_n = std::min<std::size_t>(max_n, 3);
      o.bijection_max_part = std::min(max_part, 3);
      o.samples = samples;
      o.three_term_samples = std::max<std::size_t>(samples / 2, 1);
      o.seed = seed;
      if (!common.json) std::cout << "seed " << seed << '\n';
      return report(ice::verify_suite(o), common);
    }
  } catch (const ice::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const ice::GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const ice::IceError& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return failed;
  }
  return usage;
}
