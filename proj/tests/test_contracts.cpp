#include <doctest.h>

#include <cmath>

#include "srtlab/contracts.hpp"
#include "srtlab/fixtures.hpp"
#include "srtlab/rng.hpp"
#include "support/generators.hpp"

using namespace srtlab;

TEST_CASE("exogenous default probability") {
  SUBCASE("a lone bank carries the whole first-failure mass") {
    CHECK(exogenousDefaultProb(0.1, 0.1, 5) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
  }
  SUBCASE("no jump intensity, no default") {
    CHECK(exogenousDefaultProb(0.0, 0.2, 7) == 0.0);
  }
  SUBCASE("two equal banks split the mass") {
    // (1 - e^{-0.2}) / 2, frozen from the closed form
    CHECK(exogenousDefaultProb(0.1, 0.2, 1) == doctest::Approx(0.09063462346100909).epsilon(1e-12));
  }
  SUBCASE("first-failure masses sum to the total over one period") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = rng.uniformInt(1, 8);
      std::vector<double> hazards;
      double aggregate = 0.0;
      for (int i = 0; i < n; ++i) {
        hazards.push_back(rng.uniform(0.0, 0.02));
        aggregate += hazards.back();
      }
      if (aggregate == 0.0) continue;
      double total = 0.0;
      for (double h : hazards) total += exogenousDefaultProb(h, aggregate, 1);
      CHECK(total == doctest::Approx(-std::expm1(-aggregate)).epsilon(1e-12));
    }
  }
  SUBCASE("degenerate system is a caller error") {
    CHECK_THROWS_AS(exogenousDefaultProb(0.0, 0.0, 1), std::invalid_argument);
  }
}

TEST_CASE("risk premium") {
  SUBCASE("riskless borrower pays no premium") { CHECK(riskPremium(0.03, 0.0, 5) == 0.0); }
  SUBCASE("hand-evaluated closed form") { CHECK(riskPremium(0.0, 0.5, 1) == doctest::Approx(1.0)); }
  SUBCASE("diverges at certain default") {
    CHECK_THROWS_AS(riskPremium(0.02, 1.0, 3), std::domain_error);
  }
  SUBCASE("strictly increasing in the default probability") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const double r = rng.uniform(0.0, 0.1);
      const int maturity = rng.uniformInt(1, 40);
      const double a = rng.uniform(0.0, 0.98);
      const double b = rng.uniform(0.0, 0.98);
      if (a == b) continue;
      const double lo = std::min(a, b), hi = std::max(a, b);
      CHECK(riskPremium(r, lo, maturity) < riskPremium(r, hi, maturity));
    }
  }
}

TEST_CASE("payoffs") {
  SUBCASE("the fair premium makes lending risk-neutral") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
      const double r = rng.uniform(0.0, 0.1);
      const double rho = rng.uniform(0.0, 0.95);
      const int maturity = rng.uniformInt(1, 40);
      const double h = riskPremium(r, rho, maturity);
      CHECK(std::abs(lenderPayoff(r, h, rho, maturity)) < 1e-12);
      CHECK(h >= 0.0);
      CHECK((h == 0.0) == (rho == 0.0));
    }
  }
  SUBCASE("riskless at the base rate is worth nothing extra") {
    CHECK(lenderPayoff(0.04, 0.0, 0.0, 12) == 0.0);
  }
  SUBCASE("certain default with no recovery loses the principal") {
    CHECK(lenderPayoff(0.04, 0.02, 1.0, 12) == -1.0);
  }
  SUBCASE("borrower indifferent at its own deposit rate") {
    CHECK(borrowerPayoff(0.05, 0.03, 0.01, 0.01, 7) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("hand-evaluated taxed payoff") {
    CHECK(borrowerPayoff(0.05, 0.03, 0.0, 0.04, 1) ==
          doctest::Approx(1.0 - 1.07 / 1.05).epsilon(1e-12));
  }
  SUBCASE("strictly decreasing in the tax") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const double rj = rng.uniform(0.0, 0.1);
      const double ri = rng.uniform(0.0, 0.1);
      const double tax = rng.uniform(0.0, 0.1);
      const int maturity = rng.uniformInt(1, 30);
      CHECK(borrowerPayoff(rj, ri, 0.0, tax + 0.01, maturity) <
            borrowerPayoff(rj, ri, 0.0, tax, maturity));
    }
  }
}

TEST_CASE("quoted-rate order ignores the borrower's risk level") {
  // Premia depend on the lender only through its base rate, so a cheaper
  // lender stays cheaper for every borrower.
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const double ra = rng.uniform(0.0, 0.1);
    const double rb = rng.uniform(0.0, 0.1);
    if (ra == rb) continue;
    const double rho = rng.uniform(0.0, 0.95);
    const int maturity = rng.uniformInt(1, 30);
    const double qa = ra + riskPremium(ra, rho, maturity);
    const double qb = rb + riskPremium(rb, rho, maturity);
    CHECK((ra < rb) == (qa < qb));
  }
}

TEST_CASE("contagion default probability") {
  SUBCASE("isolated bank") {
    NetExposureMatrix m(3);
    std::vector<double> equity{1.0, 1.0, 1.0};
    std::vector<double> prob{0.1, 0.2, 0.3};
    CHECK(endogenousDefaultProb(1, m, equity, prob) == 0.0);
  }
  SUBCASE("a single fatal exposure passes through the counter-party mass") {
    NetExposureMatrix m(2);
    m.addLoan(0, 1, 2.0);  // bank 0 is exposed to bank 1 beyond its equity
    std::vector<double> equity{1.0, 5.0};
    std::vector<double> prob{0.1, 0.25};
    CHECK(endogenousDefaultProb(0, m, equity, prob) == doctest::Approx(0.25));
    CHECK(endogenousDefaultProb(1, m, equity, prob) == 0.0);
    const auto all = endogenousDefaultProbs(m, equity, prob);
    CHECK(all[0] == doctest::Approx(0.25));
    CHECK(all[1] == 0.0);
  }
  SUBCASE("sub-equity exposures never propagate") {
    NetExposureMatrix m(3);
    m.addLoan(0, 1, 1.0);
    m.addLoan(1, 2, 1.0);
    std::vector<double> equity{2.0, 2.0, 2.0};
    std::vector<double> prob{0.1, 0.1, 0.1};
    for (int j = 0; j < 3; ++j) CHECK(endogenousDefaultProb(j, m, equity, prob) == 0.0);
  }
}

TEST_CASE("belief modes") {
  CHECK(totalDefaultProb(0.2, 0.0, BeliefMode::Full) == doctest::Approx(0.2));
  CHECK(totalDefaultProb(0.2, 0.9, BeliefMode::Naive) == 0.2);
  CHECK(totalDefaultProb(0.1, 0.5, BeliefMode::Full) == doctest::Approx(0.55));
  CHECK(totalDefaultProb(0.1, 0.9, BeliefMode::CommonPrior, 0.5) == doctest::Approx(0.55));
  CHECK_THROWS_AS(totalDefaultProb(-0.1, 0.0, BeliefMode::Full), std::invalid_argument);
}

TEST_CASE("ignoring contagion weakly widens every borrower's feasible set") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int maturity = rng.uniformInt(1, 10);
    const double exo = rng.uniform(0.0, 0.4);
    const double contagion = rng.uniform(0.0, 0.5);
    const double naive = totalDefaultProb(exo, contagion, BeliefMode::Naive);
    const double full = totalDefaultProb(exo, contagion, BeliefMode::Full);
    const double r = rng.uniform(0.0, 0.08);
    const double naiveQuote = r + riskPremium(r, naive, maturity);
    const double fullQuote = r + riskPremium(r, full, maturity);
    CHECK(naiveQuote <= fullQuote);
    // Feasibility at any reservation rate: whatever the naive quote prices
    // out, the full quote prices out too.
    const double reservation = rng.uniform(0.0, 0.2);
    if (fullQuote < reservation) CHECK(naiveQuote < reservation);
  }

  SUBCASE("as market-level feasible-set inclusion") {
    // On the chain economy's prior network, borrower 4 carries contagion
    // risk through its legacy loan; full-mode quotes can only shrink its
    // lender list relative to naive mode.
    const auto e = fixtures::chainEconomy();
    const std::vector<double> exo(9, 0.02);
    const std::vector<double> contagion =
        endogenousDefaultProbs(e.priorExposure, e.equity, exo);
    CHECK(contagion[4] > 0.0);  // via the legacy loan to borrower 5

    const std::vector<int> lenders{0, 1, 2};
    const std::vector<int> borrowers{3, 4, 5};
    const std::vector<double> rates{0.05, 0.04, 0.01};
    // 5.1% sits between borrower 4's naive top quote (~5.07%) and its
    // full-mode top quote (~5.14%).
    const std::vector<double> reservations{0.09, 0.051, 0.005};
    for (BeliefMode mode : {BeliefMode::Naive, BeliefMode::Full}) {
      std::vector<double> probs;
      for (int b : borrowers)
        probs.push_back(totalDefaultProb(exo[static_cast<std::size_t>(b)],
                                         contagion[static_cast<std::size_t>(b)], mode));
      const LiquidityMarket mk =
          buildPreferences(0, 9, buildQuotes(lenders, borrowers, rates, probs, 30),
                           reservations, LenderPreferences::Indifferent, probs);
      if (mode == BeliefMode::Naive) {
        CHECK(mk.reservationCut[1] == 3);  // all lenders affordable
      } else {
        CHECK(mk.reservationCut[1] < 3);  // the premium prices some out
        CHECK(mk.borrowerRanking[1] == std::vector<int>{2, 1, 0});  // order unchanged
      }
    }
  }
}
