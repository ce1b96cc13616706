#include "tlle/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "tlle/error.hpp"

namespace tlle::fft {
namespace {

struct PlanKey {
  std::size_t rows;
  std::size_t cols;
  int sign;
  bool in_place;
  auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const PlanKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE never touches the arrays, so scratch buffers are enough.
    const std::size_t total = key.rows * key.cols;
    std::vector<fftw_complex> a(total), b(total);
    fftw_complex* out = key.in_place ? a.data() : b.data();
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan =
        key.rows == 1
            ? fftw_plan_dft_1d(static_cast<int>(key.cols), a.data(), out, key.sign, flags)
            : fftw_plan_dft_2d(static_cast<int>(key.rows), static_cast<int>(key.cols), a.data(),
                               out, key.sign, flags);
    if (plan == nullptr) throw Error("fftw failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::size_t rows, std::size_t cols, int sign, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out) {
  if (in.size() != rows * cols || out.size() != rows * cols)
    throw ShapeError("fft: buffer length does not match transform size");
  const bool in_place = in.data() == out.data();
  fftw_plan plan = cache().get({rows, cols, sign, in_place});
  // fftw_execute_dft takes a non-const input; out-of-place complex transforms
  // with FFTW_ESTIMATE leave the input intact.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

} // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(1, in.size(), FFTW_FORWARD, in, out);
}

void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(1, in.size(), FFTW_BACKWARD, in, out);
}

void forward_2d(std::size_t rows, std::size_t cols, std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out) {
  run(rows, cols, FFTW_FORWARD, in, out);
}

} // namespace tlle::fft
