#include "cem/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>

namespace {

cem::NormalizedName name(const std::string& raw) {
  return cem::normalize_name(raw);
}

double norm(const cem::NameVector& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

TEST(Encode, DeterministicUnitVectors) {
  const auto params = cem::init_model(cem::desk_dims(512, 16), 3);
  const auto v1 = cem::encode(params, name("Tesla Motors"));
  const auto v2 = cem::encode(params, name("Tesla Motors"));
  EXPECT_EQ(v1, v2);
  EXPECT_EQ(v1.size(), 16u);
  EXPECT_NEAR(norm(v1), 1.0, 1e-12);
  EXPECT_NEAR(cem::dot(v1, v2), 1.0, 1e-12);
  EXPECT_NEAR(cem::cosine_distance(v1, v2), 0.0, 1e-12);

  for (const char* s : {"t", "ta", "acme systems international"}) {
    const auto v = cem::encode(params, name(s));
    EXPECT_EQ(v.size(), 16u);
    EXPECT_NEAR(norm(v), 1.0, 1e-12);
    for (double x : v) EXPECT_TRUE(std::isfinite(x));
  }
}

TEST(Encode, SensitiveToCharacterOrder) {
  const auto params = cem::init_model(cem::desk_dims(512, 16), 3);
  const auto abc = cem::encode(params, name("abc"));
  const auto cba = cem::encode(params, name("cba"));
  EXPECT_NE(abc, cba);
}

TEST(Encode, DistinctSeedsGiveDistinctModels) {
  const auto a = cem::init_model(cem::desk_dims(128, 8), 1);
  const auto b = cem::init_model(cem::desk_dims(128, 8), 2);
  EXPECT_NE(cem::encode(a, name("acme")), cem::encode(b, name("acme")));
  const auto a2 = cem::init_model(cem::desk_dims(128, 8), 1);
  EXPECT_EQ(cem::encode(a, name("acme")), cem::encode(a2, name("acme")));
}

TEST(ModelDims, Validation) {
  cem::ModelDims dims{0, 8, 8, 8};
  EXPECT_THROW(dims.validate(), std::invalid_argument);
  EXPECT_THROW(cem::init_model(dims, 1), std::invalid_argument);
}

TEST(ModelFile, RoundTripsBitExactly) {
  const auto params = cem::init_model(cem::desk_dims(256, 12), 9);
  const std::string path = "/tmp/cem_model_test.bin";
  cem::save_model(params, path);
  const auto loaded = cem::load_model(path);
  EXPECT_EQ(loaded.dims, params.dims);

  auto& mutable_params = const_cast<cem::ModelParams&>(params);
  auto loaded_blocks = cem::param_blocks(const_cast<cem::ModelParams&>(loaded));
  auto original_blocks = cem::param_blocks(mutable_params);
  ASSERT_EQ(loaded_blocks.size(), original_blocks.size());
  for (size_t i = 0; i < loaded_blocks.size(); ++i) {
    EXPECT_EQ(*loaded_blocks[i].values, *original_blocks[i].values)
        << loaded_blocks[i].name;
  }

  EXPECT_EQ(cem::encode(loaded, name("Round Trip LLC")),
            cem::encode(params, name("Round Trip LLC")));
  std::remove(path.c_str());
}

TEST(ModelFile, RejectsGarbage) {
  const std::string path = "/tmp/cem_model_test_garbage.bin";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a model at all", f);
    std::fclose(f);
  }
  EXPECT_THROW(cem::load_model(path), cem::DataError);
  EXPECT_THROW(cem::load_model("/nonexistent/model.bin"), cem::DataError);
  std::remove(path.c_str());
}

}  // namespace
