#include <random>

#include <gtest/gtest.h>

#include "iepg/certificate.hpp"
#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"
#include "iepg/realize.hpp"
#include "oracles.hpp"

namespace iepg {
namespace {

Certificate sample(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<double> lambda = oracle::distinct_spectrum(rng, 5);
  std::vector<Vector> tests = standard_basis(5);
  tests.push_back(oracle::gaussian_vector(rng, 5));
  GenericOptions options;
  options.seed = seed;
  return generic_realize(cycle_graph(5), lambda, tests, options).certificate;
}

TEST(Json, GraphAndMatrixRoundTrip) {
  const Graph g = cycle_graph(5);
  const Json jg = g;
  EXPECT_EQ(jg.at("n"), 5);
  EXPECT_EQ(jg.at("edges").size(), 5u);
  EXPECT_EQ(jg.get<Graph>(), g);

  const SymMatrix m = jacobi_from_spectrum(std::vector<double>{0, 1, 2});
  const Json jm = m;
  EXPECT_EQ(jm.get<SymMatrix>().dense(), m.dense());
}

TEST(Json, RejectsMalformedInput) {
  EXPECT_THROW(Json::parse(R"({"n": 2, "edges": [[1, 3]]})").get<Graph>(), InputError);
  EXPECT_THROW(Json::parse(R"({"edges": []})").get<Graph>(), InputError);
  EXPECT_THROW(Json::parse(R"({"n": 2, "rows": [[1, 2], [3, 4]]})").get<SymMatrix>(), InputError);
  EXPECT_THROW(Json::parse(R"({"n": 2, "rows": [[1, 2]]})").get<SymMatrix>(), InputError);
}

TEST(Json, MultiplicityRows) {
  const MultiplicityMatrix v = MultiplicityMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}});
  const Json j = v;
  EXPECT_EQ(j, Json::parse("[[1,0],[1,1],[0,1]]"));
  EXPECT_EQ(j.get<MultiplicityMatrix>(), v);
  EXPECT_THROW(Json::parse("[[1,0],[1]]").get<MultiplicityMatrix>(), InputError);
  EXPECT_THROW(Json::parse("[[1,-1]]").get<MultiplicityMatrix>(), InputError);
}

TEST(Certificate, MakeRejectsBadInputs) {
  const SymMatrix a = jacobi_from_spectrum(std::vector<double>{0, 1, 2});
  EXPECT_NO_THROW(make_certificate("t", path_graph(3), a, {0, 1, 2}, 1e-8));
  EXPECT_THROW(make_certificate("t", path_graph(3), a, {0, 1, 2.5}, 1e-8), NumericError);
  EXPECT_THROW(make_certificate("t", empty_graph(3), a, {0, 1, 2}, 1e-8), NumericError);
}

TEST(Certificate, MarginAndSigns) {
  Matrix u(2, 2);
  u << 1, 1, 1, -1;
  u /= std::sqrt(2.0);
  EXPECT_NEAR(nowhere_zero_margin(u, standard_basis(2)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(std::isinf(nowhere_zero_margin(u, std::vector<Vector>{})));
  Matrix flipped = -u;
  normalize_column_signs(flipped);
  for (int j = 0; j < 2; ++j) EXPECT_GE(flipped(j, j), 0.0);
}

TEST(Verify, RoundTripThroughJson) {
  const Certificate cert = sample(3);
  const Json j = cert;
  const std::string text = j.dump();
  const VerifyReport direct = verify_certificate(cert);
  const VerifyReport parsed = verify_certificate(Json::parse(text));
  EXPECT_TRUE(direct.ok);
  EXPECT_TRUE(parsed.ok);
  EXPECT_EQ(parsed.spectral_residual, direct.spectral_residual);
  EXPECT_EQ(Json(Json::parse(text).get<Certificate>()).dump(), text);
}

TEST(Verify, DetectsTampering) {
  Certificate cert = sample(4);
  {
    Certificate t = cert;
    const Edge e = *t.graph.edges().begin();
    t.matrix.set(e.u - 1, e.v - 1, 0.0);
    const VerifyReport r = verify_certificate(t);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.pattern_ok);
  }
  {
    Certificate t = cert;
    t.matrix.set(0, 0, t.matrix(0, 0) + 1e-3 * spread(t.target));
    const VerifyReport r = verify_certificate(t);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.spectrum_ok);
  }
  {
    Certificate t = cert;
    t.spectral_residual = 0.0;  // stored residuals are never trusted
    EXPECT_TRUE(verify_certificate(t).ok);
  }
}

TEST(Verify, MissingFieldIsInputError) {
  Json j = sample(5);
  j.erase("matrix");
  EXPECT_THROW(verify_certificate(j), InputError);
}

TEST(VerifyProperty, FreshCertificatesPass) {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const VerifyReport r = verify_certificate(Json(sample(seed)));
    EXPECT_TRUE(r.ok) << "seed " << seed;
    ASSERT_TRUE(r.margin.has_value());
    EXPECT_GT(*r.margin, 0.0);
    EXPECT_EQ(r.spectrum.distinct(), 5);
  }
}

}  // namespace
}  // namespace iepg
