#include <gtest/gtest.h>

#include "qmeur/entropy.hpp"
#include "qmeur/states.hpp"
#include "support/oracles.hpp"

using namespace qmeur;

namespace {

DensityMatrix bell() { return make_state({Family::BELL}); }
DensityMatrix ghz() { return make_state({Family::GHZ}); }

DensityMatrix product(std::uint64_t seed) {
  return validate_density(tensor(random_density(2, 2, seed).matrix(), random_density(2, 2, seed + 1).matrix()),
                          Dims{2, 2});
}

Basis hadamard_basis() {
  ComplexMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return Basis::from_columns(h);
}

}  // namespace

TEST(Shannon, Examples) {
  EXPECT_EQ(shannon(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(shannon(std::vector<double>{0.5, 0.5}), 1.0, 1e-15);
  EXPECT_NEAR(shannon(std::vector<double>{0.9, 0.1}), 0.4690, 1e-4);
  EXPECT_NEAR(shannon(std::vector<double>{0.9, 0.1}), 0.4689955935892811, 1e-14);
}

TEST(Shannon, RangeAndErrors) {
  EXPECT_NEAR(shannon(std::vector<double>(8, 0.125)), 3.0, 1e-14);
  EXPECT_THROW(shannon(std::vector<double>{0.5, 0.6}), UsageError);
  EXPECT_THROW(shannon(std::vector<double>{1.5, -0.5}), UsageError);
  EXPECT_THROW(shannon(std::vector<double>{}), UsageError);
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann(validate_density(projector(Basis::computational(2).vector(0)))), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann(validate_density(ComplexMatrix::Identity(8, 8) / 8.0, Dims{2, 2, 2})), 3.0, 1e-14);
  EXPECT_NEAR(von_neumann(marginal(ghz(), {0, 1})), 1.0, 1e-14);
}

TEST(VonNeumann, PureStatesVanishAndMatchOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_NEAR(von_neumann(random_density(8, 1, seed)), 0.0, 1e-9);
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed);
    EXPECT_NEAR(von_neumann(rho), oracle::entropy(rho.matrix()), 1e-10);
  }
}

TEST(ConditionalEntropy, Examples) {
  EXPECT_NEAR(conditional_entropy(bell(), 0, 1), -1.0, 1e-12);
  const DensityMatrix p = product(3);
  EXPECT_NEAR(conditional_entropy(p, 0, 1), von_neumann(marginal(p, {0})), 1e-12);
  EXPECT_NEAR(conditional_entropy(ghz(), 0, 1), 0.0, 1e-12);
  EXPECT_NEAR(conditional_entropy(ghz(), 0, 2), 0.0, 1e-12);
}

TEST(ConditionalEntropy, BadIndices) {
  EXPECT_THROW(conditional_entropy(bell(), 0, 2), UsageError);
  EXPECT_THROW(conditional_entropy(bell(), 1, 1), UsageError);
  EXPECT_THROW(mutual_information(bell(), -1, 0), UsageError);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(product(8), 0, 1), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(bell(), 0, 1), 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(ghz(), 0, 1), 1.0, 1e-12);
}

TEST(MutualInformation, NonNegativeAndSymmetric) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed);
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      EXPECT_GE(mutual_information(rho, a, b), -1e-10);
      EXPECT_NEAR(mutual_information(rho, a, b), mutual_information(rho, b, a), 1e-12);
    }
  }
}

TEST(Holevo, Examples) {
  EXPECT_NEAR(holevo(ghz(), Basis::computational(2), 0, 1), 1.0, 1e-12);
  EXPECT_NEAR(holevo(ghz(), hadamard_basis(), 0, 1), 0.0, 1e-12);
  const DensityMatrix p = product(20);
  EXPECT_NEAR(holevo(p, Basis::from_columns(random_unitary(2, 4)), 0, 1), 0.0, 1e-12);
  EXPECT_NEAR(holevo(p, Basis::from_columns(random_unitary(2, 4)), 1, 0), 0.0, 1e-12);
}

TEST(Holevo, MatchesExplicitEnsembleOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed + 300);
    const Basis b = Basis::from_columns(random_unitary(2, seed));
    for (int memory : {1, 2}) {
      const ComplexMatrix rab = oracle::qubit_partial_trace(rho.matrix(), 3, {0, memory});
      double avg = 0.0;
      for (int i = 0; i < 2; ++i) {
        const ComplexMatrix p = oracle::kron(b.projector(i), ComplexMatrix::Identity(2, 2));
        const ComplexMatrix branch = p * rab * p;
        const double prob = branch.trace().real();
        avg += prob * oracle::entropy(oracle::qubit_partial_trace(branch / prob, 2, {1}));
      }
      const double expected = oracle::entropy(oracle::qubit_partial_trace(rho.matrix(), 3, {memory})) - avg;
      EXPECT_NEAR(holevo(rho, b, 0, memory), expected, 1e-10);
    }
  }
}

TEST(Holevo, BoundedByMemoryEntropyAndMutualInformation) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed + 1000);
    const Basis b = Basis::from_columns(random_unitary(2, seed + 5));
    for (int memory : {1, 2}) {
      const double chi = holevo(rho, b, 0, memory);
      EXPECT_GE(chi, -1e-10);
      EXPECT_LE(chi, von_neumann(marginal(rho, {memory})) + 1e-10);
      EXPECT_LE(chi, mutual_information(rho, 0, memory) + 1e-9);
    }
  }
}

TEST(EntropyIdentities, MarginalSplitsIntoConditionalPlusMutual) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed + 2000);
    const double s_a = von_neumann(marginal(rho, {0}));
    EXPECT_NEAR(s_a - conditional_entropy(rho, 0, 1) - mutual_information(rho, 0, 1), 0.0, 1e-10);
    EXPECT_NEAR(s_a - conditional_entropy(rho, 0, 2) - mutual_information(rho, 0, 2), 0.0, 1e-10);
  }
}

TEST(EntropyIdentities, CqStateDecomposition) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + seed % 8, seed + 3000);
    const Basis b = Basis::from_columns(random_unitary(2, seed + 11));
    for (int memory : {1, 2}) {
      const DensityMatrix cq = measure_channel(marginal(rho, {0, memory}), b, 0);
      const double lhs = conditional_entropy(cq, 0, 1);
      const MeasurementOutcome out = outcome_statistics(rho, b, 0);
      EXPECT_NEAR(lhs, shannon(out.probs) - holevo(rho, b, 0, memory), 1e-9);
    }
  }
}

TEST(EntropyIdentities, StrongSubadditivityAverage) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const DensityMatrix rho = random_density(8, 1 + static_cast<int>(seed % 8), seed + 4000);
    EXPECT_GE(0.5 * (conditional_entropy(rho, 0, 1) + conditional_entropy(rho, 0, 2)), -1e-9);
  }
}
