#pragma once

#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace qhd::fft {

// FFTW plan creation mutates global planner state; executing distinct plans is
// thread-safe. Plans and their aligned buffers are cached per thread and per
// size, with creation serialized by a global mutex.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plans {
  public:
    explicit Plans(int n) : n_(n), nc_(n / 2 + 1) {
        real_ = fftw_alloc_real(n_);
        half_ = fftw_alloc_complex(nc_);
        zin_ = fftw_alloc_complex(n_);
        zout_ = fftw_alloc_complex(n_);
        std::lock_guard<std::mutex> lock(planner_mutex());
        r2c_ = fftw_plan_dft_r2c_1d(n_, real_, half_, FFTW_ESTIMATE);
        c2r_ = fftw_plan_dft_c2r_1d(n_, half_, real_, FFTW_ESTIMATE);
        fwd_ = fftw_plan_dft_1d(n_, zin_, zout_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n_, zin_, zout_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(r2c_);
        fftw_destroy_plan(c2r_);
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(half_);
        fftw_free(zin_);
        fftw_free(zout_);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;

    int n() const { return n_; }
    int nc() const { return nc_; }

    double* real_buf() { return real_; }
    std::complex<double>* half_buf() {
        return reinterpret_cast<std::complex<double>*>(half_);
    }
    std::complex<double>* cplx_in() {
        return reinterpret_cast<std::complex<double>*>(zin_);
    }
    std::complex<double>* cplx_out() {
        return reinterpret_cast<std::complex<double>*>(zout_);
    }

    void forward_r2c() { fftw_execute(r2c_); }
    void backward_c2r() { fftw_execute(c2r_); }
    void forward_c2c() { fftw_execute(fwd_); }
    void backward_c2c() { fftw_execute(bwd_); }

  private:
    int n_, nc_;
    double* real_;
    fftw_complex* half_;
    fftw_complex* zin_;
    fftw_complex* zout_;
    fftw_plan r2c_, c2r_, fwd_, bwd_;
};

inline Plans& plans_for(int n) {
    thread_local std::unordered_map<int, std::unique_ptr<Plans>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Plans>(n);
    return *slot;
}

}  // namespace qhd::fft
