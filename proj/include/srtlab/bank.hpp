#pragma once

#include <vector>

namespace srtlab {

// Full balance sheet of one bank. Interbank and household positions are
// carried explicitly so the accounting identities can be asserted, even
// though equity always reduces to riskyAsset - externalLiability.
struct BankState {
  int id = 0;
  double riskyAsset = 0.0;          // external risky asset, jumps to 0 on an exogenous shock
  double externalLiability = 0.0;   // constant long-term liability
  double hazardRate = 0.0;          // per-period intensity of the exogenous shock
  double depositRate = 0.0;         // rate paid on household deposits, also the lender's base rate
  double reservationRate = 0.0;     // highest borrowing rate the bank accepts
  double interbankAssets = 0.0;     // loans extended to other banks
  double interbankLiabilities = 0.0;
  double householdAssets = 0.0;     // loans extended to households
  double householdLiabilities = 0.0;  // household deposits
  double bondHoldings = 0.0;        // risk-free parking spot for unlent deposits
  bool bankrupt = false;

  double equity() const {
    return riskyAsset + interbankAssets + householdAssets + bondHoldings - externalLiability -
           interbankLiabilities - householdLiabilities;
  }
};

std::vector<double> equityVector(const std::vector<BankState>& banks);

// Exogenous failure: the risky asset loses its full value and the bank's
// equity goes negative. Throws if the bank is already bankrupt.
// Returns the period-independent post-shock equity.
double applyExogenousShock(std::vector<BankState>& banks, int failedBank);

}  // namespace srtlab
