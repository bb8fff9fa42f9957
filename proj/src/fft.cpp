#include "magweyl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace magweyl::fft {

namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(const std::vector<int>& dims, int sign) {
  static std::map<std::pair<std::vector<int>, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto key = std::make_pair(dims, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // Plan with a scratch buffer; FFTW_UNALIGNED lets the plan run on any
  // caller buffer via fftw_execute_dft.
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<cplx> scratch(total);
  fftw_plan p = fftw_plan_dft(
      static_cast<int>(dims.size()), dims.data(),
      reinterpret_cast<fftw_complex*>(scratch.data()),
      reinterpret_cast<fftw_complex*>(scratch.data()),
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void dft(cplx* data, const std::vector<int>& dims, int sign) {
  fftw_plan p = plan_for(dims, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace magweyl::fft
