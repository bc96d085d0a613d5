#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qhd {

/// Uniform periodic grid on [0, L): N points, spacing dx = L/N.
class Grid {
  public:
    Grid(int n_points, double length) : n_(n_points), length_(length) {
        if (n_ < 16 || (n_ & (n_ - 1)) != 0)
            throw std::invalid_argument("grid: n_points must be a power of two, >= 16");
        if (!(length_ > 0.0))
            throw std::invalid_argument("grid: length must be positive");
    }

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double x(int i) const { return i * dx(); }
    double center() const { return 0.5 * length_; }

    /// Smallest signed periodic distance from the domain center.
    double from_center(int i) const {
        double d = x(i) - center();
        if (d > 0.5 * length_) d -= length_;
        if (d < -0.5 * length_) d += length_;
        return d;
    }

    bool operator==(const Grid& o) const { return n_ == o.n_ && length_ == o.length_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    int n_;
    double length_;
};

/// Real samples on a Grid. Value type; all operations are non-mutating.
class ScalarField {
  public:
    ScalarField(const Grid& g, std::vector<double> values)
        : grid_(g), v_(std::move(values)) {
        if (static_cast<int>(v_.size()) != grid_.n())
            throw std::invalid_argument("field: value count does not match grid");
    }
    ScalarField(const Grid& g, double fill = 0.0) : grid_(g), v_(g.n(), fill) {}

    template <typename F>
    static ScalarField sample(const Grid& g, F&& f) {
        std::vector<double> v(g.n());
        for (int i = 0; i < g.n(); ++i) v[i] = f(g.x(i));
        return ScalarField(g, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.n(); }
    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    double max() const {
        double m = v_[0];
        for (double x : v_) m = std::max(m, x);
        return m;
    }
    double min() const {
        double m = v_[0];
        for (double x : v_) m = std::min(m, x);
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }
    bool finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    ScalarField& operator+=(const ScalarField& o) {
        check(o);
        for (int i = 0; i < size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        check(o);
        for (int i = 0; i < size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    ScalarField& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }

    /// Pointwise product.
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
        a.check(b);
        ScalarField r(a.grid_);
        for (int i = 0; i < a.size(); ++i) r.v_[i] = a.v_[i] * b.v_[i];
        return r;
    }

    template <typename F>
    ScalarField map(F&& f) const {
        ScalarField r(grid_);
        for (int i = 0; i < size(); ++i) r.v_[i] = f(v_[i]);
        return r;
    }

  private:
    void check(const ScalarField& o) const {
        if (grid_ != o.grid_) throw std::invalid_argument("field: grid mismatch");
    }
    Grid grid_;
    std::vector<double> v_;
};

/// Complex samples on a Grid (wavefunction carrier).
class ComplexField {
  public:
    using cplx = std::complex<double>;

    ComplexField(const Grid& g, std::vector<cplx> values)
        : grid_(g), v_(std::move(values)) {
        if (static_cast<int>(v_.size()) != grid_.n())
            throw std::invalid_argument("field: value count does not match grid");
    }
    ComplexField(const Grid& g, cplx fill = {0.0, 0.0}) : grid_(g), v_(g.n(), fill) {}

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.n(); }
    cplx operator[](int i) const { return v_[i]; }
    cplx& operator[](int i) { return v_[i]; }
    const std::vector<cplx>& values() const { return v_; }
    std::vector<cplx>& values() { return v_; }

    bool finite() const {
        for (const cplx& z : v_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

  private:
    Grid grid_;
    std::vector<cplx> v_;
};

}  // namespace qhd
