#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace acmhd::detail {

namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, Plans>& plan_cache() {
  static std::map<int, Plans> cache;
  return cache;
}

Plans& plans_for(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::size_t m = static_cast<std::size_t>(n) * n * n;
  fftw_complex* a = fftw_alloc_complex(m);
  fftw_complex* b = fftw_alloc_complex(m);
  Plans p;
  // x-fastest layout means dims are passed (z, y, x); FFTW_UNALIGNED keeps
  // the plans valid for whatever buffers new-array execution hands over
  p.fwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void dft3(int n, const std::complex<double>* in, std::complex<double>* out, int sign) {
  Plans& p = plans_for(n);
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
  auto* dst = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(sign < 0 ? p.fwd : p.bwd, src, dst);
}

}  // namespace acmhd::detail
