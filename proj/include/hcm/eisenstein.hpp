// Eisenstein part of the zeroth moment H_{m,M}(n): the admissible d for each
// primitive character, the local factors Psi and Phi_2, the coefficients
// a(eta, d), and the cusp form coefficients left over as residuals.

#pragma once

#include "hcm/characters.hpp"

#include <string>
#include <vector>

namespace hcm {

// Readings of the places where the coefficient formula is ambiguous or
// misprinted. The defaults are the ones under which the residual series
// vanish for exactly the pairs (m, M) where they must.
enum class Eta0Reading { OddPart, HatOddPart, TildeOddPart, One };
enum class PhiReading { Tilde, Star };
enum class PsiReading { Corrected, AsPrinted };

struct Interpretation {
  Eta0Reading eta0 = Eta0Reading::OddPart;
  PhiReading phi = PhiReading::Tilde;
  PsiReading psi = PsiReading::Corrected;

  std::string describe() const;
};

std::string to_string(Eta0Reading r);
std::string to_string(PhiReading r);
std::string to_string(PsiReading r);
Eta0Reading parse_eta0(const std::string& s);
PhiReading parse_phi(const std::string& s);
PsiReading parse_psi(const std::string& s);

// Representative of m mod M in [1, M]; throws for m = 0.
std::int64_t reduce_m(std::int64_t m, std::int64_t M);

bool in_S(const DirichletCharacter& eta, std::int64_t m, std::int64_t M, std::int64_t d);
Rational psi(std::int64_t d, std::int64_t m, std::int64_t p, std::int64_t M,
             PsiReading reading = PsiReading::Corrected);
Complex phi2(const DirichletCharacter& eta, Eta0Reading reading = Eta0Reading::OddPart);
Complex coeff_a(const DirichletCharacter& eta, std::int64_t d, std::int64_t m, std::int64_t M,
                const Interpretation& interp = {});
// 2 / (M prod_{p | M} (1 - p^{-2})).
Rational prefactor(std::int64_t M);
// sum_{d | n} eta(n/d) eta(d) d.
Complex sigma_twisted(const DirichletCharacter& eta, std::int64_t n);

struct ExpansionTerm {
  DirichletCharacter eta;
  std::int64_t d = 1;
  Complex coefficient;
};

class MainTermExpansion {
 public:
  MainTermExpansion(std::int64_t m, std::int64_t M, const Interpretation& interp = {});

  std::int64_t m() const { return m_; }
  std::int64_t M() const { return M_; }
  const Rational& prefactor_value() const { return prefactor_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }
  // Complex value, before the imaginary part is checked.
  Complex evaluate_complex(std::int64_t n) const;
  // Throws std::runtime_error when the imaginary part reaches 1e-9.
  double evaluate(std::int64_t n) const;
  // prefactor * sum over the d = 1 terms of a(eta, 1) eta(x)^power: the
  // coefficient of sigma_1(n) at any n = x (mod M) coprime to M.
  Complex unit_coefficient(std::int64_t x, int power = 1) const;

 private:
  std::int64_t m_;
  std::int64_t M_;
  Rational prefactor_;
  std::vector<ExpansionTerm> terms_;
};

double main_term(std::int64_t m, std::int64_t M, std::int64_t n, const Interpretation& interp = {});
double cusp_residual_0(std::int64_t m, std::int64_t M, std::int64_t n, const Interpretation& interp = {});

struct ResidualRow {
  std::int64_t n = 0;
  Rational moment;
  Rational lambda;
  double main_term = 0.0;
  double residual = 0.0;
};

// Rows for n = 1..max_n; the n-range is split across `threads` workers.
std::vector<ResidualRow> residual_series(std::int64_t m, std::int64_t M, std::int64_t max_n,
                                         const Interpretation& interp = {}, int threads = 1);

// S(m, M) as defined in prose: conditions on the local components eta_p.
std::vector<DirichletCharacter> S_set(std::int64_t m, std::int64_t M);
// {eta : in_S(eta, m, M, 1)}, the set the coefficient formula actually uses.
std::vector<DirichletCharacter> S_set_admissible(std::int64_t m, std::int64_t M);

struct SSetComparison {
  std::vector<DirichletCharacter> only_in_prose;
  std::vector<DirichletCharacter> only_admissible;
  bool agree() const { return only_in_prose.empty() && only_admissible.empty(); }
};

SSetComparison compare_S_sets(std::int64_t m, std::int64_t M);

}  // namespace hcm
