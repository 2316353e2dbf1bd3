#include "srtlab/loan_book.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "srtlab/csv.hpp"

namespace srtlab {

void LoanBook::addLoan(const Loan& loan) {
  if (loan.lender == loan.borrower) throw std::invalid_argument("LoanBook: self loan");
  if (loan.lender < 0 || loan.lender >= bankCount_ || loan.borrower < 0 ||
      loan.borrower >= bankCount_)
    throw std::out_of_range("LoanBook: bank index out of range");
  if (loan.amount <= 0.0) throw std::invalid_argument("LoanBook: non-positive loan amount");
  if (loan.maturityPeriods < 1) throw std::invalid_argument("LoanBook: maturity must be >= 1");
  loans_.push_back(loan);
}

void LoanBook::addBond(const BondHolding& bond) {
  if (bond.bank < 0 || bond.bank >= bankCount_)
    throw std::out_of_range("LoanBook: bank index out of range");
  if (bond.amount <= 0.0) throw std::invalid_argument("LoanBook: non-positive bond amount");
  bonds_.push_back(bond);
}

int LoanBook::liveLoanCount(long period) const {
  return static_cast<int>(
      std::count_if(loans_.begin(), loans_.end(), [&](const Loan& l) { return l.liveAt(period); }));
}

void LoanBook::expireTo(long newPeriod) {
  std::erase_if(loans_, [&](const Loan& l) { return !l.liveAt(newPeriod); });
  std::erase_if(bonds_, [&](const BondHolding& b) { return !b.liveAt(newPeriod); });
}

NetExposureMatrix buildNetExposure(const LoanBook& book) {
  return buildNetExposure(book, book.currentPeriod());
}

NetExposureMatrix buildNetExposure(const LoanBook& book, long asOf) {
  NetExposureMatrix m(book.bankCount(), asOf);
  for (const Loan& l : book.loans())
    if (l.liveAt(asOf)) m.addLoan(l.lender, l.borrower, l.amount);
  return m;
}

void refreshBalanceSheets(const LoanBook& book, std::vector<BankState>& banks) {
  const long t = book.currentPeriod();
  for (BankState& b : banks) {
    if (b.bankrupt) continue;
    b.interbankAssets = 0.0;
    b.interbankLiabilities = 0.0;
    b.bondHoldings = 0.0;
  }
  for (const Loan& l : book.loans()) {
    if (!l.liveAt(t)) continue;
    BankState& lender = banks[static_cast<std::size_t>(l.lender)];
    BankState& borrower = banks[static_cast<std::size_t>(l.borrower)];
    if (!lender.bankrupt) lender.interbankAssets += l.amount;
    if (!borrower.bankrupt) borrower.interbankLiabilities += l.amount;
  }
  for (const BondHolding& bond : book.bonds()) {
    if (!bond.liveAt(t)) continue;
    BankState& holder = banks[static_cast<std::size_t>(bond.bank)];
    if (!holder.bankrupt) holder.bondHoldings += bond.amount;
  }
  // Every deposit is either lent on or parked in bonds, and every household
  // loan is funded on the interbank market.
  for (BankState& b : banks) {
    if (b.bankrupt) continue;
    b.householdLiabilities = b.interbankAssets + b.bondHoldings;
    b.householdAssets = b.interbankLiabilities;
  }
}

void advancePeriod(LoanBook& book, std::vector<BankState>& banks, const std::vector<int>& lenders,
                   const std::vector<int>& borrowers, const Matching& matching,
                   const LoanTerms& terms, long newPeriod) {
  if (newPeriod <= book.currentPeriod())
    throw std::invalid_argument("advancePeriod: new period must be after the current one");
  if (static_cast<int>(banks.size()) != book.bankCount())
    throw std::invalid_argument("advancePeriod: bank vector size mismatch");

  auto inSide = [](const std::vector<int>& side, int bank) {
    return std::find(side.begin(), side.end(), bank) != side.end();
  };
  for (int b = 0; b < matching.size(); ++b) {
    const int p = matching.partner(b);
    if (p == b) continue;
    if (banks[static_cast<std::size_t>(b)].bankrupt)
      throw std::invalid_argument("advancePeriod: matching references bankrupt bank " +
                                  std::to_string(b));
    if (inSide(borrowers, b) && !inSide(lenders, p))
      throw std::invalid_argument("advancePeriod: borrower " + std::to_string(b) +
                                  " matched outside the lender set");
    if (inSide(lenders, b) && !inSide(borrowers, p))
      throw std::invalid_argument("advancePeriod: lender " + std::to_string(b) +
                                  " matched outside the borrower set");
    if (!inSide(lenders, b) && !inSide(borrowers, b))
      throw std::invalid_argument("advancePeriod: matched bank " + std::to_string(b) +
                                  " is on neither market side");
  }

  book.expireTo(newPeriod);
  book.setPeriod(newPeriod);
  for (int lender : lenders) {
    const int partner = matching.partner(lender);
    if (partner != lender)
      book.addLoan({lender, partner, terms.amount, newPeriod, terms.maturityPeriods});
    else
      book.addBond({lender, terms.amount, newPeriod, terms.maturityPeriods});
  }
  // Unmatched borrowers simply decline their households' loan demand.
  refreshBalanceSheets(book, banks);
}

void advancePeriod(LoanBook& book, std::vector<BankState>& banks, const std::vector<int>& lenders,
                   const std::vector<int>& borrowers, const Matching& matching,
                   const LoanTerms& terms) {
  advancePeriod(book, banks, lenders, borrowers, matching, terms, book.currentPeriod() + 1);
}

void writeLoanBookCsv(const LoanBook& book, std::ostream& out) {
  out << "lender,borrower,amount,origination,maturity\n";
  for (const Loan& l : book.loans()) {
    if (!l.liveAt(book.currentPeriod())) continue;
    out << l.lender << ',' << l.borrower << ',' << csv::formatDouble(l.amount) << ','
        << l.origination << ',' << l.maturityPeriods << '\n';
  }
}

}  // namespace srtlab
