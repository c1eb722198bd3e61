#include "tidaleq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tidaleq {

namespace {

// Plans are created once per (size, direction). Creation is serialized;
// execution through the new-array interface is thread safe.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  fftw_complex* a = fftw_alloc_complex(n);
  fftw_complex* b = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  plans.emplace(key, p);
  return p;
}

std::vector<cplx> run(const std::vector<cplx>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cplx> out(n);
  if (n == 0) return out;
  std::vector<cplx> src = in;  // fftw may not preserve input for some plans
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> dft_forward(const std::vector<cplx>& in) { return run(in, FFTW_FORWARD); }
std::vector<cplx> dft_backward(const std::vector<cplx>& in) { return run(in, FFTW_BACKWARD); }

}  // namespace tidaleq
