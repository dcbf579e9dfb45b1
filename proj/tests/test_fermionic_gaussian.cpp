#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glh/fermionic_gaussian.hpp"
#include "oracles.hpp"

using namespace glh;

namespace {

RMat random_antisymmetric(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  RMat a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = g(rng);
  return (a - a.transpose().eval()) / 2.0;
}

// Covariance of a dense state: M_kl = -(i/2) <psi| [c_k, c_l] |psi>.
RMat dense_covariance(const Vec& psi, int modes) {
  const auto cs = oracle::dense_majoranas(modes);
  RMat m(2 * modes, 2 * modes);
  for (int k = 0; k < 2 * modes; ++k)
    for (int l = 0; l < 2 * modes; ++l) {
      const cd v = psi.dot((cs[k] * cs[l] - cs[l] * cs[k]) * psi);
      const cd entry = cd(0.0, -0.5) * v;
      REQUIRE(std::abs(entry.imag()) < 1e-10);
      m(k, l) = entry.real();
    }
  return m;
}

// Dense matchgate unitary U = exp(G), G = (1/4) sum A_jk c_j c_k.
Mat dense_matchgate(const RMat& A, int modes) {
  const auto cs = oracle::dense_majoranas(modes);
  const Eigen::Index dim = Eigen::Index(1) << modes;
  Mat G = Mat::Zero(dim, dim);
  for (int j = 0; j < 2 * modes; ++j)
    for (int k = 0; k < 2 * modes; ++k) G += 0.25 * A(j, k) * cs[j] * cs[k];
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(cd(0, 1) * G));
  Vec ph(dim);
  for (Eigen::Index i = 0; i < dim; ++i) ph(i) = std::exp(cd(0, -1) * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Dense free Hamiltonian (i/2) sum h_jk c_j c_k.
Mat dense_quadratic(const RMat& h, int modes) {
  const auto cs = oracle::dense_majoranas(modes);
  const Eigen::Index dim = Eigen::Index(1) << modes;
  Mat H = Mat::Zero(dim, dim);
  for (int j = 0; j < 2 * modes; ++j)
    for (int k = 0; k < 2 * modes; ++k) H += cd(0, 0.5) * h(j, k) * cs[j] * cs[k];
  return H;
}

// <H_free> = (i/2) sum h_jk <c_j c_k> = -(1/2) sum h_jk M_jk (tr h vanishes).
double free_energy(const RMat& h, const CovarianceMatrix& M) {
  return -0.5 * (h.transpose() * M.M).trace();
}

Mat dense_monomial(const MajoranaMonomial& m, int modes) {
  const auto cs = oracle::dense_majoranas(modes);
  const Eigen::Index dim = Eigen::Index(1) << modes;
  Mat out = Mat::Identity(dim, dim) * m.coefficient;
  for (int k : m.indices) out = out * cs[k];
  return out;
}

}  // namespace

TEST_CASE("vacuum covariance matches the dense definition") {
  for (int n : {1, 2, 3}) {
    Vec vac = Vec::Zero(Eigen::Index(1) << n);
    vac(0) = 1.0;
    const RMat want = dense_covariance(vac, n);
    const CovarianceMatrix m = vacuum_covariance(n);
    CHECK((m.M - want).cwiseAbs().maxCoeff() < 1e-12);
    m.validate();
  }
  CHECK_THROWS_AS(vacuum_covariance(0), std::invalid_argument);
}

TEST_CASE("jordan_wigner reproduces the Pauli string densely") {
  std::mt19937_64 rng(71);
  SUBCASE("hand examples") {
    // Z0 = -i c0 c1; lone X on qubit 0 = c0; identity stays a scalar.
    auto z0 = jordan_wigner(PauliString{1.0, "Z"});
    CHECK(z0.indices == std::vector<int>{0, 1});
    CHECK(std::abs(z0.coefficient - cd(0, -1)) < 1e-14);
    auto x0 = jordan_wigner(PauliString{1.0, "XI"});
    CHECK(x0.indices == std::vector<int>{0});
    CHECK(std::abs(x0.coefficient - cd(1, 0)) < 1e-14);
    auto id = jordan_wigner(PauliString{cd(2.0, -1.0), "III"});
    CHECK(id.indices.empty());
    CHECK(std::abs(id.coefficient - cd(2.0, -1.0)) < 1e-14);
    // the tailed string ZX is the single Majorana c2; bare IX needs three.
    auto zx = jordan_wigner(PauliString{1.0, "ZX"});
    CHECK(zx.indices == std::vector<int>{2});
    CHECK(std::abs(zx.coefficient - cd(1, 0)) < 1e-14);
    auto ix = jordan_wigner(PauliString{1.0, "IX"});
    CHECK(ix.indices == std::vector<int>{0, 1, 2});
  }
  SUBCASE("random strings round-trip through the dense Majoranas") {
    std::uniform_int_distribution<int> letter(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + (int)(rng() % 4);
      std::string s(n, 'I');
      for (auto& c : s) c = "IXYZ"[letter(rng)];
      std::normal_distribution<double> g;
      const PauliString p{cd(g(rng), g(rng)), s};
      const MajoranaMonomial m = jordan_wigner(p);
      CHECK(std::is_sorted(m.indices.begin(), m.indices.end()));
      CHECK((p.dense() - dense_monomial(m, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pfaffian") {
  SUBCASE("canonical blocks") {
    RMat a = RMat::Zero(2, 2);
    a(0, 1) = 3.5;
    a(1, 0) = -3.5;
    CHECK(pfaffian(a) == doctest::Approx(3.5));
    RMat b = RMat::Zero(4, 4);
    b(0, 1) = 2.0; b(1, 0) = -2.0;
    b(2, 3) = -0.5; b(3, 2) = 0.5;
    CHECK(pfaffian(b) == doctest::Approx(-1.0));
    CHECK(pfaffian(RMat::Zero(4, 4)) == 0.0);
    CHECK(pfaffian(RMat::Zero(0, 0)) == 1.0);
  }
  SUBCASE("Pf(A)^2 = det(A) on random antisymmetric matrices") {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = 2 * (1 + (int)(rng() % 4));
      const RMat a = random_antisymmetric(dim, rng);
      const double pf = pfaffian(a);
      CHECK(pf * pf == doctest::Approx(a.determinant()).epsilon(1e-8));
    }
  }
  SUBCASE("congruence: Pf(B A B^T) = det(B) Pf(A)") {
    std::mt19937_64 rng(73);
    std::normal_distribution<double> g;
    RMat a = random_antisymmetric(6, rng);
    RMat b(6, 6);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) b(r, c) = g(rng);
    CHECK(pfaffian(b * a * b.transpose()) ==
          doctest::Approx(b.determinant() * pfaffian(a)).epsilon(1e-8));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(pfaffian(RMat::Zero(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(pfaffian(RMat::Identity(2, 2)), std::invalid_argument);
  }
}

TEST_CASE("evolve is a group action preserving purity") {
  std::mt19937_64 rng(74);
  const int n = 4;
  const CovarianceMatrix vac = vacuum_covariance(n);
  const OrthogonalRotation r1{expm_antisymmetric(random_antisymmetric(2 * n, rng))};
  const OrthogonalRotation r2{expm_antisymmetric(random_antisymmetric(2 * n, rng))};
  r1.validate();
  const CovarianceMatrix step = evolve(evolve(vac, r1), r2);
  const CovarianceMatrix joint = evolve(vac, OrthogonalRotation{r2.R * r1.R});
  CHECK((step.M - joint.M).cwiseAbs().maxCoeff() < 1e-10);
  step.validate();  // still pure
  CHECK_THROWS_AS(evolve(vac, OrthogonalRotation{RMat::Identity(2, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(OrthogonalRotation{2.0 * RMat::Identity(4, 4)}.validate(), std::invalid_argument);
}

TEST_CASE("Wick expectations agree with dense matchgate states") {
  std::mt19937_64 rng(75);
  std::uniform_int_distribution<int> letter(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + (int)(rng() % 3);
    const RMat A = random_antisymmetric(2 * n, rng);
    const Mat U = dense_matchgate(A, n);
    Vec psi = Vec::Zero(Eigen::Index(1) << n);
    psi(0) = 1.0;
    psi = U * psi;
    const RMat R = expm_antisymmetric(A);
    const CovarianceMatrix M = evolve(vacuum_covariance(n), OrthogonalRotation{R});
    // the two state constructions match at the covariance level
    CHECK((M.M - dense_covariance(psi, n)).cwiseAbs().maxCoeff() < 1e-8);
    std::string s(n, 'I');
    for (auto& c : s) c = "IXYZ"[letter(rng)];
    const PauliString p{1.0, s};
    const cd want = psi.dot(p.dense() * psi);
    CHECK(std::abs(expectation_pauli(M, p) - want) < 1e-8);
  }
}

TEST_CASE("gaussian_energy") {
  SUBCASE("number-like terms on the vacuum") {
    const int n = 3;
    LocalHamiltonian H;
    H.n = n;
    H.k = 1;
    Mat z(2, 2);
    z << 1, 0, 0, -1;
    for (int q = 0; q < n; ++q) H.terms.push_back(HermitianTerm{{q}, z});
    CHECK(gaussian_energy(vacuum_covariance(n), H) == doctest::Approx((double)n));
  }
  SUBCASE("random local Hamiltonian vs dense expectation") {
    std::mt19937_64 rng(76);
    const int n = 4;
    for (int trial = 0; trial < 20; ++trial) {
      LocalHamiltonian H;
      H.n = n;
      H.k = 2;
      for (int t = 0; t < 3; ++t) {
        int a = (int)(rng() % n), b;
        do b = (int)(rng() % n); while (b == a);
        H.terms.push_back(HermitianTerm{{a, b}, oracle::random_hermitian(4, rng)});
      }
      const RMat A = random_antisymmetric(2 * n, rng);
      const Mat U = dense_matchgate(A, n);
      Vec psi = Vec::Zero(Eigen::Index(1) << n);
      psi(0) = 1.0;
      psi = U * psi;
      const CovarianceMatrix M =
          evolve(vacuum_covariance(n), OrthogonalRotation{expm_antisymmetric(A)});
      const Mat Hd = assemble_dense(H);
      CHECK(gaussian_energy(M, H) == doctest::Approx(psi.dot(Hd * psi).real()).epsilon(1e-8));
    }
  }
  SUBCASE("mode count must match") {
    LocalHamiltonian H;
    H.n = 2;
    H.k = 1;
    H.terms.push_back(HermitianTerm{{0}, Mat::Identity(2, 2)});
    CHECK_THROWS_AS(gaussian_energy(vacuum_covariance(3), H), std::invalid_argument);
  }
}

TEST_CASE("ground_covariance") {
  SUBCASE("h = 0 leaves every mode free") {
    QuadraticHamiltonian q{RMat::Zero(6, 6)};
    const auto rep = ground_covariance(q);
    CHECK(rep.zero_modes == 3);
    for (double e : rep.energies) CHECK(e == 0.0);
    rep.covariance.validate();
  }
  SUBCASE("single mode recovers |omega|") {
    for (double omega : {2.0, -0.7}) {
      RMat h = RMat::Zero(2, 2);
      h(0, 1) = omega;
      h(1, 0) = -omega;
      const auto rep = ground_covariance(QuadraticHamiltonian{h});
      REQUIRE(rep.energies.size() == 1);
      CHECK(rep.energies[0] == doctest::Approx(std::abs(omega)));
      CHECK(rep.zero_modes == 0);
      // ground energy of (i/2) h c c is -|omega|
      CHECK(free_energy(h, rep.covariance) ==
            doctest::Approx(-std::abs(omega)));
    }
  }
  SUBCASE("matches the dense minimum eigenvalue") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + (int)(rng() % 3);
      const RMat h = random_antisymmetric(2 * n, rng, 2.0);
      const auto rep = ground_covariance(QuadraticHamiltonian{h});
      const double energy = free_energy(h, rep.covariance);
      Eigen::SelfAdjointEigenSolver<Mat> es(dense_quadratic(h, n));
      CHECK(energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-8));
      // no pure Gaussian state does better
      const RMat A = random_antisymmetric(2 * n, rng);
      const CovarianceMatrix other =
          evolve(vacuum_covariance(n), OrthogonalRotation{expm_antisymmetric(A)});
      CHECK(free_energy(h, other) >= energy - 1e-8);
      CHECK(rep.energies.size() + (std::size_t)rep.zero_modes == (std::size_t)n);
    }
  }
  SUBCASE("degenerate spectrum keeps an orthonormal canonical basis") {
    // two decoupled modes at the same frequency
    RMat h = RMat::Zero(4, 4);
    h(0, 1) = 1.0; h(1, 0) = -1.0;
    h(2, 3) = 1.0; h(3, 2) = -1.0;
    const auto rep = ground_covariance(QuadraticHamiltonian{h});
    rep.covariance.validate();
    CHECK(free_energy(h, rep.covariance) == doctest::Approx(-2.0));
  }
}

TEST_CASE("expm_antisymmetric is orthogonal with the right series") {
  std::mt19937_64 rng(78);
  const RMat A = random_antisymmetric(8, rng, 0.1);
  const RMat R = expm_antisymmetric(A);
  OrthogonalRotation{R}.validate();
  // small-angle check against the truncated series
  RMat series = RMat::Identity(8, 8) + A + 0.5 * A * A + A * A * A / 6.0 +
                A * A * A * A / 24.0 + A * A * A * A * A / 120.0;
  CHECK((R - series).cwiseAbs().maxCoeff() < 1e-5);
  CHECK_THROWS_AS(expm_antisymmetric(RMat::Identity(2, 2)), std::invalid_argument);
}
