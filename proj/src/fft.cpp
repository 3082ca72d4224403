#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "imlab/errors.hpp"

namespace imlab::spectral::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, Direction dir) {
    const auto key = std::make_tuple(dim, n, dir == Direction::forward);
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // The planner only reads the buffer's size and alignment with FFTW_ESTIMATE.
    std::size_t size = dim == 1 ? n : std::size_t(n) * n * n;
    std::vector<std::complex<double>> scratch(size);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, flags)
                              : fftw_plan_dft_3d(n, n, n, buf, buf, sign, flags);
    if (!plan) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, int dim, int n, Direction dir) {
  fftw_plan plan = cache().get(dim, n, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace imlab::spectral::detail
