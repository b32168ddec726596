#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dicke/io.hpp"
#include "dicke/steady_state.hpp"

using namespace dicke;

TEST(DensityIo, CsvRoundTripExact) {
  const auto rho = solve_steady_state(ModelParams::crf(9, 0.7)).dense();
  std::stringstream ss;
  write_density_csv(rho, ss);
  const MatrixC back = read_density_csv(ss, rho.basis.dim());
  EXPECT_EQ(back, rho.matrix);
}

TEST(DensityIo, MalformedInput) {
  std::istringstream bad_header("i,j,re,im\n");
  EXPECT_THROW(read_density_csv(bad_header, 2), std::invalid_argument);
  std::istringstream short_file("row,col,re,im\n0,0,1,0\n");
  EXPECT_THROW(read_density_csv(short_file, 2), std::invalid_argument);
  std::istringstream out_of_range("row,col,re,im\n5,0,1,0\n");
  EXPECT_THROW(read_density_csv(out_of_range, 2), std::out_of_range);
}

TEST(DensityIo, MetadataAndFiles) {
  const auto rho = solve_steady_state(ModelParams::sdm(7, 0.4)).dense();
  const auto meta = density_metadata(rho, Model::sdm, 0.4);
  EXPECT_EQ(meta["model"], "sdm");
  EXPECT_EQ(meta["N"], 7);
  EXPECT_EQ(meta["construction"], "closed-form");
  EXPECT_LT(meta["residual"].get<double>(), 1e-12);

  const auto dir = std::filesystem::temp_directory_path() / "dicke_io_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "state").string();
  write_density(rho, Model::sdm, 0.4, prefix);
  std::ifstream csv(prefix + ".csv"), js(prefix + ".json");
  ASSERT_TRUE(csv && js);
  EXPECT_EQ(read_density_csv(csv, 8), rho.matrix);
  EXPECT_EQ(nlohmann::ordered_json::parse(js), meta);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_density(rho, Model::sdm, 0.4, "/nonexistent-dir/x"), std::runtime_error);
}
