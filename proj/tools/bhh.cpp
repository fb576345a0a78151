// Command-line front end: factor, apply, report, bench.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "bhh/bhh.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSelfCheckFailed = 2;

enum class Mode { Tall, Complement, Auto };

const std::map<std::string, Mode> kModes{{"tall", Mode::Tall}, {"complement", Mode::Complement}, {"auto", Mode::Auto}};

bhh::CompactSubspaceFactor<double> run_factor(const Eigen::MatrixXd& a, Mode mode) {
  switch (mode) {
    case Mode::Tall: return bhh::factor_tall(a);
    case Mode::Complement: return bhh::factor_complement(a);
    case Mode::Auto: break;
  }
  return bhh::factor_auto(a);
}

double relative_residual(const bhh::CompactSubspaceFactor<double>& f, const Eigen::MatrixXd& a) {
  const double diff = (bhh::reconstruct_a(f) - a).norm();
  const double scale = a.norm();
  return scale > 0.0 ? diff / scale : diff;
}

std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

int cmd_factor(const std::string& input, const std::string& output, Mode mode, bool self_check) {
  const Eigen::MatrixXd a = bhh::read_matrix_file(input);
  if (a.rows() < a.cols()) {
    std::cerr << "error: factor requires m >= n (got " << a.rows() << "x" << a.cols() << ")\n";
    return kUsage;
  }
  const auto f = run_factor(a, mode);
  const std::size_t bytes = bhh::write_factor_file(f, output);
  const double residual = relative_residual(f, a);

  std::printf("input: %lld x %lld\n", static_cast<long long>(a.rows()), static_cast<long long>(a.cols()));
  std::printf("placement: %s\n", bhh::to_string(f.placement()));
  std::printf("reflections: %lld, bandwidth %lld\n", static_cast<long long>(f.g().count()),
              static_cast<long long>(f.g().bandwidth()));
  std::printf("storage: %lld floats (+%lld betas)\n", static_cast<long long>(bhh::storage_floats(f.g())),
              static_cast<long long>(f.g().count()));
  std::printf("wrote: %zu bytes to %s\n", bytes, output.c_str());
  std::printf("residual: %.6e\n", residual);

  if (!self_check) return kOk;
  const auto back = bhh::read_factor_file(output);
  const double reread = relative_residual(back, a);
  const bool ok = back == f && reread == residual && reread <= 1e-12;
  std::printf("self-check: %s (re-read residual %.6e)\n", ok ? "ok" : "FAILED", reread);
  return ok ? kOk : kSelfCheckFailed;
}

Eigen::VectorXd as_vector(const Eigen::MatrixXd& v) {
  if (v.cols() == 1) return v.col(0);
  if (v.rows() == 1) return v.row(0).transpose();
  throw std::invalid_argument("vector file must hold a single row or column, got " + std::to_string(v.rows()) +
                              "x" + std::to_string(v.cols()));
}

int cmd_apply(const std::string& factor_path, const std::string& vector_path, bool transpose, long block_size) {
  const auto f = bhh::read_factor_file(factor_path);
  const Eigen::VectorXd x = as_vector(bhh::read_matrix_file(vector_path));
  const auto& g = f.g();
  if (x.size() != g.ambient_dim()) {
    std::cerr << "error: vector has length " << x.size() << " but the factor acts on R^" << g.ambient_dim() << "\n";
    return kUsage;
  }
  Eigen::VectorXd y;
  if (block_size > 0)
    y = transpose ? bhh::apply_blocked_transpose(g, x, block_size) : bhh::apply_blocked(g, x, block_size);
  else
    y = transpose ? bhh::apply_transpose(g, x) : bhh::apply(g, x);
  bhh::write_matrix(y, std::cout);
  return kOk;
}

int cmd_report(long long m, long long n) {
  if (n < 0 || m < n) {
    std::cerr << "error: report requires m >= n >= 0\n";
    return kUsage;
  }
  std::cout << bhh::format_report(bhh::storage_report(m, n));
  return kOk;
}

template <typename F>
double time_per_call(int reps, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count() / reps;
}

int cmd_bench(long long m, long long n, int reps, std::uint64_t seed, long block_size, Mode mode) {
  if (n < 0 || m < n) {
    std::cerr << "error: bench requires m >= n >= 0\n";
    return kUsage;
  }
  bhh::SeededGenerator gen(seed);
  const Eigen::MatrixXd a = gen.matrix(m, n);

  const auto t0 = std::chrono::steady_clock::now();
  const auto f = run_factor(a, mode);
  const auto t1 = std::chrono::steady_clock::now();
  const auto bytes = bhh::encode_factor(f);
  const auto& g = f.g();
  const long long k = g.count(), w = g.bandwidth();

  std::printf("shape: %lld x %lld, seed %llu, placement %s\n", m, n, static_cast<unsigned long long>(seed),
              bhh::to_string(f.placement()));
  std::printf("factor: %.3f ms, residual %.3e, %zu bytes, fnv1a64 %016llx\n",
              std::chrono::duration<double, std::milli>(t1 - t0).count(), relative_residual(f, a), bytes.size(),
              static_cast<unsigned long long>(fnv1a(bytes)));

  Eigen::VectorXd x = gen.vector(m);
  bhh::FlopCounter counter;
  bhh::apply_counted(g, x, counter);
  std::printf("banded flops/matvec: %lld counted, 4kw + 2k = %lld (k = %lld, w = %lld)\n",
              static_cast<long long>(counter.total()), 4 * k * w + 2 * k, k, w);

  const Eigen::MatrixXd dense = bhh::reconstruct_g(g);
  const auto blocks = bhh::build_blocks(g, block_size);
  double sink = 0.0;
  const double dense_ns = time_per_call(reps, [&] {
    Eigen::VectorXd y = dense * x;
    sink += y(0);
  });
  const double banded_ns = time_per_call(reps, [&] { sink += bhh::apply(g, x)(0); });
  const double blocked_ns = time_per_call(reps, [&] { sink += bhh::apply_blocked(g, blocks, x)(0); });

  const double banded_flops = static_cast<double>(counter.total());
  const double dense_flops = 2.0 * static_cast<double>(m) * static_cast<double>(m);
  std::printf("%-28s %12s %14s\n", "path", "ns/matvec", "GFLOP/s");
  std::printf("%-28s %12.1f %14.3f\n", "dense (m x m)", dense_ns, dense_flops / dense_ns);
  std::printf("%-28s %12.1f %14.3f\n", "banded", banded_ns, banded_flops / banded_ns);
  char label[64];
  std::snprintf(label, sizeof label, "blocked b=%ld (%lld blocks)", block_size,
                static_cast<long long>(bhh::block_count(k, block_size)));
  std::printf("%-28s %12.1f %14.3f\n", label, blocked_ns, banded_flops / blocked_ns);
  std::printf("(blocked and banded GFLOP/s use the banded flop count; checksum %.3e)\n", sink);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banded Householder factorization of m x n matrices"};
  app.require_subcommand(1);

  std::string input, output, factor_path, vector_path;
  Mode mode = Mode::Auto;
  bool self_check = false;
  bool transpose = false;
  long block_size = 0;
  long long m = 0, n = 0;
  int reps = 100;
  std::uint64_t seed = 1;
  long bench_block = 8;

  auto* factor = app.add_subcommand("factor", "Factor a text matrix into a compact factor file");
  factor->add_option("input", input, "Matrix text file")->required();
  factor->add_option("output", output, "Factor file to write")->required();
  factor->add_option("--mode", mode, "tall, complement or auto")->transform(CLI::CheckedTransformer(kModes));
  factor->add_flag("--self-check", self_check, "Re-read the written file and verify its residual");

  auto* apply = app.add_subcommand("apply", "Apply a stored G (or G^T) to a vector");
  apply->add_option("factor", factor_path, "Factor file")->required();
  apply->add_option("vector", vector_path, "Vector as an m x 1 text matrix")->required();
  apply->add_flag("--transpose", transpose, "Apply G^T instead of G");
  apply->add_option("--block-size", block_size, "Use the blocked form with this block size")
      ->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Storage accounting for an m x n basis");
  report->add_option("m", m)->required();
  report->add_option("n", n)->required();

  auto* bench = app.add_subcommand("bench", "Time dense, banded and blocked matvecs on a seeded random factor");
  bench->add_option("m", m)->required();
  bench->add_option("n", n)->required();
  bench->add_option("--reps", reps, "Repetitions per path")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--block-size", bench_block, "Block size for the blocked path")->check(CLI::PositiveNumber);
  bench->add_option("--mode", mode, "tall, complement or auto")->transform(CLI::CheckedTransformer(kModes));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*factor) return cmd_factor(input, output, mode, self_check);
    if (*apply) return cmd_apply(factor_path, vector_path, transpose, block_size);
    if (*report) return cmd_report(m, n);
    if (*bench) return cmd_bench(m, n, reps, seed, bench_block, mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
