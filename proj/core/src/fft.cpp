// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "videomerge/error.hpp"

namespace videomerge {

namespace {

// The FFTW planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex, FftwFree>;

class Plan {
 public:
  Plan(const Shape& shape, fftw_complex* data, int sign) {
    const int dims[3] = {static_cast<int>(shape.frames),
                         static_cast<int>(shape.height),
                         static_cast<int>(shape.width)};
    const int dist = dims[0] * dims[1] * dims[2];
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_many_dft(3, dims, static_cast<int>(shape.slabs()), data,
                               nullptr, 1, dist, data, nullptr, 1, dist, sign,
                               FFTW_ESTIMATE);
    if (plan_ == nullptr) {
      throw Error(Errc::invalid_shape,
                  "FFTW could not plan a transform for " + shape.to_string());
    }
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

void check_fft_extents(const Shape& shape) {
  validate_shape(shape);
  constexpr std::size_t kIntMax = 0x7fffffff;
  if (shape.frames * shape.height * shape.width > kIntMax ||
      shape.slabs() > kIntMax) {
    throw Error(Errc::invalid_shape,
                "shape too large for a 3D transform: " + shape.to_string());
  }
}

Buffer allocate(std::size_t n) {
  Buffer buf(fftw_alloc_complex(n));
  if (!buf) throw std::bad_alloc();
  return buf;
}

// In-place transform of `n` values through an aligned scratch buffer so
// plan selection never depends on caller alignment.
template <typename Load>
ComplexTensor transform(const Shape& shape, int sign, Load&& load) {
  check_fft_extents(shape);
  const std::size_t n = shape.numel();
  Buffer buf = allocate(n);
  Plan plan(shape, buf.get(), sign);
  load(buf.get());
  plan.execute();
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {buf.get()[i][0], buf.get()[i][1]};
  }
  return ComplexTensor(shape, std::move(out));
}

}  // namespace

ComplexTensor fft3(const LatentTensor& x) {
  auto src = x.data();
  return transform(x.shape(), FFTW_FORWARD, [&](fftw_complex* buf) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      buf[i][0] = src[i];
      buf[i][1] = 0.0;
    }
  });
}

ComplexTensor fft3(const ComplexTensor& x) {
  auto src = x.data();
  return transform(x.shape(), FFTW_FORWARD, [&](fftw_complex* buf) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      buf[i][0] = src[i].real();
      buf[i][1] = src[i].imag();
    }
  });
}

ComplexTensor ifft3_complex(const ComplexTensor& x) {
  auto src = x.data();
  ComplexTensor out =
      transform(x.shape(), FFTW_BACKWARD, [&](fftw_complex* buf) {
        for (std::size_t i = 0; i < src.size(); ++i) {
          buf[i][0] = src[i].real();
          buf[i][1] = src[i].imag();
        }
      });
  const Shape& s = x.shape();
  const double scale = 1.0 / static_cast<double>(s.frames * s.height * s.width);
  for (auto& v : out.data()) v *= scale;
  return out;
}

LatentTensor ifft3(const ComplexTensor& x, ImaginaryResidue residue) {
  const ComplexTensor full = ifft3_complex(x);
  double max_real = 0.0;
  double max_imag = 0.0;
  for (const auto& v : full.data()) {
    max_real = std::max(max_real, std::abs(v.real()));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (residue == ImaginaryResidue::check &&
      max_imag > kMaxImaginaryResidue * max_real) {
    std::ostringstream os;
    os << "inverse transform is not real: max|imag| = " << max_imag
       << ", max|real| = " << max_real;
    throw Error(Errc::non_real_result, os.str());
  }
  LatentTensor out(x.shape());
  auto dst = out.data();
  auto src = full.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(src[i].real());
  }
  if (!out.all_finite()) {
    throw Error(Errc::non_real_result, "inverse transform produced non-finite values");
  }
  return out;
}

}  // namespace videomerge
