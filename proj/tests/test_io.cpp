#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "entrokit/errors.hpp"
#include "entrokit/io.hpp"

using namespace entrokit;

TEST(Io, JsonDistribution) {
  const auto p = io::parse_distribution(R"({"p":[0.25,0.75]})", false);
  EXPECT_EQ(p.vec(), (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(io::parse_distribution(R"({"p":[1,3]})", true), p);
  EXPECT_THROW(io::parse_distribution(R"({"p":[1,3]})", false), ValidationError);
  EXPECT_THROW(io::parse_distribution(R"({"p":[0.5,)", false), ValidationError);
  EXPECT_THROW(io::parse_distribution(R"({"q":[1]})", false), ValidationError);
  EXPECT_THROW(io::parse_distribution(R"({"p":["a"]})", false), ValidationError);
}

TEST(Io, CsvDistribution) {
  EXPECT_EQ(io::parse_distribution("0.5, 0.5\n", false).vec(), (std::vector<double>{0.5, 0.5}));
  EXPECT_THROW(io::parse_distribution("0.5,x\n", false), ValidationError);
  EXPECT_THROW(io::parse_distribution("0.5\n0.5\n", false), ValidationError);
  EXPECT_THROW(io::parse_distribution("# nothing\n", false), ValidationError);
}

TEST(Io, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = sample(DistributionShape{6}, RngSeed{seed});
    const auto j = sample(Joint2Shape{3, 4}, RngSeed{seed});
    const auto t = sample(Joint3Shape{2, 3, 2}, RngSeed{seed});
    const auto w = sample(ChannelShape{3, 2}, RngSeed{seed});
    for (auto f : {io::Format::json, io::Format::csv}) {
      EXPECT_EQ(io::parse_distribution(io::write(p, f), false), p);
      EXPECT_EQ(io::parse_joint2(io::write(j, f), false), j);
      EXPECT_EQ(io::parse_joint3(io::write(t, f), false), t);
      EXPECT_EQ(io::parse_channel(io::write(w, f)), w);
    }
  }
}

TEST(Io, Joint3Detection) {
  EXPECT_TRUE(io::looks_like_joint3(R"({"t":[[[1]]]})"));
  EXPECT_FALSE(io::looks_like_joint3(R"({"m":[[1]]})"));
  EXPECT_TRUE(io::looks_like_joint3("# shape=1,1,1\n1\n"));
}

TEST(Io, ReadSource) {
  EXPECT_EQ(io::read_source(R"({"p":[1]})"), R"({"p":[1]})");
  const std::string path = ::testing::TempDir() + "entrokit_io_test.json";
  {
    std::ofstream f(path);
    f << R"({"p":[0.5,0.5]})";
  }
  EXPECT_EQ(io::parse_distribution(io::read_source(path), false).size(), 2u);
  std::remove(path.c_str());
  EXPECT_THROW(io::read_source("/nonexistent/file.json"), ValidationError);
}

TEST(Io, FormatReal) {
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::format_real(1.0 / 3.0)), 1.0 / 3.0);
}
