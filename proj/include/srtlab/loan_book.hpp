#pragma once

#include <ostream>
#include <vector>

#include "srtlab/bank.hpp"
#include "srtlab/exposure.hpp"
#include "srtlab/matching.hpp"

namespace srtlab {

struct Loan {
  int lender = 0;
  int borrower = 0;
  double amount = 1.0;
  long origination = 0;
  int maturityPeriods = 1;

  bool liveAt(long period) const {
    return origination <= period && period < origination + maturityPeriods;
  }
};

// Risk-free parking spot for a household deposit no interbank borrower took;
// matures together with the deposit that funded it.
struct BondHolding {
  int bank = 0;
  double amount = 1.0;
  long origination = 0;
  int maturityPeriods = 1;

  bool liveAt(long period) const {
    return origination <= period && period < origination + maturityPeriods;
  }
};

// The interbank system as the accumulation of loans still running: a
// directed multigraph, parallel loans preserved. Expired entries are
// dropped exactly at maturity.
class LoanBook {
 public:
  LoanBook() = default;
  LoanBook(int bankCount, long startPeriod) : bankCount_(bankCount), period_(startPeriod) {}

  int bankCount() const { return bankCount_; }
  long currentPeriod() const { return period_; }
  const std::vector<Loan>& loans() const { return loans_; }
  const std::vector<BondHolding>& bonds() const { return bonds_; }

  void addLoan(const Loan& loan);
  void addBond(const BondHolding& bond);

  int liveLoanCount(long period) const;

  // Drops everything that matures at or before `newPeriod`; internal only,
  // advancePeriod is the public way to move time forward.
  void expireTo(long newPeriod);
  void setPeriod(long p) { period_ = p; }

 private:
  int bankCount_ = 0;
  long period_ = 0;
  std::vector<Loan> loans_;
  std::vector<BondHolding> bonds_;
};

NetExposureMatrix buildNetExposure(const LoanBook& book);
// Exposures of the loans still live at `asOf`; with asOf one period past the
// book this is the matrix after maturity removal but before new business.
NetExposureMatrix buildNetExposure(const LoanBook& book, long asOf);

struct LoanTerms {
  double amount = 1.0;
  int maturityPeriods = 1;
};

// Moves the book to `newPeriod`: maturing loans and bonds drop out, each
// matched pair books one new loan, each unmatched lender parks its deposit
// in a bond, and every solvent bank's balance-sheet aggregates are rebuilt
// from the books. Throws if the matching references bankrupt banks or banks
// outside the given market sides.
void advancePeriod(LoanBook& book, std::vector<BankState>& banks, const std::vector<int>& lenders,
                   const std::vector<int>& borrowers, const Matching& matching,
                   const LoanTerms& terms, long newPeriod);

// Convenience overload: advance by one period.
void advancePeriod(LoanBook& book, std::vector<BankState>& banks, const std::vector<int>& lenders,
                   const std::vector<int>& borrowers, const Matching& matching,
                   const LoanTerms& terms);

// Recomputes interbank/household/bond aggregates of all solvent banks from
// the books; bankrupt banks are left frozen.
void refreshBalanceSheets(const LoanBook& book, std::vector<BankState>& banks);

// Snapshot of the live loans: lender,borrower,amount,origination,maturity.
void writeLoanBookCsv(const LoanBook& book, std::ostream& out);

}  // namespace srtlab
