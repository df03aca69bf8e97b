#include "knalg/run_config.hpp"

#include <filesystem>
#include <fstream>

#include "knalg/error.hpp"
#include "test_support.hpp"

using namespace knalg;
using knalg::test::H;

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(parseComplex("0.5+0.8i"), cplx(0.5, 0.8));
  EXPECT_EQ(parseComplex("-0.3i"), cplx(0.0, -0.3));
  EXPECT_EQ(parseComplex("i"), cplx(0.0, 1.0));
  EXPECT_EQ(parseComplex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parseComplex("2"), cplx(2.0, 0.0));
  EXPECT_EQ(parseComplex("1e-3-2i"), cplx(1e-3, -2.0));
  EXPECT_EQ(parseComplex(" 0.17 + 0.11i "), cplx(0.17, 0.11));
  EXPECT_EQ(parseComplex("3-j"), cplx(3.0, -1.0));
}

TEST(ParseComplex, Rejections) {
  for (const char* bad : {"", "abc", "1+", "0.5+0.8", "1..2", "i2"}) {
    EXPECT_THROW(parseComplex(bad), UsageError) << bad;
  }
}

TEST(RunConfig, DefaultsAndBounds) {
  RunConfig cfg;
  EXPECT_EQ(cfg.indexBound(), HalfInt(5));
  cfg.genus = 1;
  EXPECT_EQ(cfg.indexBound(), H(3.5));
  EXPECT_EQ(cfg.lattice().tau(), cplx(0.5, 0.8));
  EXPECT_NO_THROW(cfg.validate());
}

TEST(RunConfig, ValidationErrors) {
  auto invalid = [](auto mutate) {
    RunConfig cfg;
    mutate(cfg);
    EXPECT_THROW(cfg.validate(), UsageError);
  };
  invalid([](RunConfig& c) { c.tol = 0.0; });
  invalid([](RunConfig& c) { c.depth = 4; });
  invalid([](RunConfig& c) { c.genus = -1; });
  invalid([](RunConfig& c) { c.genus = 2; });
  invalid([](RunConfig& c) { c.range = H(2.5); });
  invalid([](RunConfig& c) {
    c.genus = 1;
    c.range = 3;
  });
  invalid([](RunConfig& c) {
    c.genus = 1;
    c.tau = cplx(0.5, -1.0);
  });
  invalid([](RunConfig& c) {
    c.tau = cplx(0.5, 1.0);
    c.omega1 = 1.0;
  });
  invalid([](RunConfig& c) { c.params.q = -1.0; });
  RunConfig withFile;
  withFile.genus = 2;
  withFile.range = 3;
  withFile.basisFile = "basis.json";
  EXPECT_NO_THROW(withFile.validate());
}

TEST(ConfigJson, KeysMirrorFlags) {
  const RunConfig cfg = applyConfigJson(R"({
    "genus": 1, "tau": "0.4+0.9i", "z0": [0.2, 0.1], "q": 2.0, "alpha": 0.5, "beta": -1,
    "range": "5/2", "depth": 32, "tol": 1e-8, "format": "csv", "basis-file": "b.json", "out": "o.txt"})");
  EXPECT_EQ(cfg.genus, 1);
  EXPECT_EQ(*cfg.tau, cplx(0.4, 0.9));
  EXPECT_EQ(cfg.z0, cplx(0.2, 0.1));
  EXPECT_EQ(cfg.params.q, 2.0);
  EXPECT_EQ(cfg.params.beta, -1.0);
  EXPECT_EQ(*cfg.range, H(2.5));
  EXPECT_EQ(cfg.depth, 32);
  EXPECT_EQ(cfg.format, OutputFormat::Csv);
  EXPECT_EQ(cfg.basisFile->string(), "b.json");
  EXPECT_EQ(cfg.out->string(), "o.txt");
}

TEST(ConfigJson, AppliesOnTopOfBase) {
  RunConfig base;
  base.depth = 20;
  const RunConfig cfg = applyConfigJson(R"({"q": 3})", base);
  EXPECT_EQ(cfg.depth, 20);
  EXPECT_EQ(cfg.params.q, 3.0);
}

TEST(ConfigJson, Errors) {
  EXPECT_THROW(applyConfigJson("{"), UsageError);
  EXPECT_THROW(applyConfigJson("[]"), UsageError);
  EXPECT_THROW(applyConfigJson(R"({"colour": 1})"), UsageError);
  EXPECT_THROW(applyConfigJson(R"({"genus": "one"})"), UsageError);
  EXPECT_THROW(applyConfigJson(R"({"range": 0.3})"), UsageError);
  EXPECT_THROW(applyConfigJson(R"({"format": "xml"})"), UsageError);
  EXPECT_THROW(applyConfigFile("/nonexistent/config.json"), UsageError);
}

TEST(ConfigJson, ReadsFiles) {
  const auto path = std::filesystem::temp_directory_path() / "knalg_config_test.json";
  std::ofstream(path) << R"({"genus": 1, "range": 1.5})";
  const RunConfig cfg = applyConfigFile(path);
  std::filesystem::remove(path);
  EXPECT_EQ(cfg.indexBound(), H(1.5));
}

TEST(Metadata, RecordsSurfaceAndParameters) {
  RunConfig cfg;
  cfg.genus = 1;
  cfg.range = H(1.5);
  const BasisFamily family = familyFor(cfg, H(1.5));
  const TableMetadata meta = makeMetadata(cfg, family, "central", true);
  EXPECT_EQ(meta.genus, 1);
  EXPECT_EQ(meta.g0, H(1.5));
  EXPECT_EQ(*meta.z0, cplx(0.17, 0.11));
  EXPECT_EQ(*meta.omega2, cplx(0.5, 0.8));
  EXPECT_EQ(*meta.q, 1.5);
  EXPECT_EQ(meta.basisSource, "genus1");
  EXPECT_FALSE(makeMetadata(cfg, family, "central", false).q.has_value());
}
