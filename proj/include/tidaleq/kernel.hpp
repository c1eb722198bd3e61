#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tidaleq {

/// The vorticity function G of the stream-function formulation, with
/// derivatives up to third order. Cheap to copy; immutable once built.
class VorticityProfile {
 public:
  using Fn = std::function<double(double)>;

  VorticityProfile(std::string name, Fn g, Fn d1, Fn d2, Fn d3, bool monotone_certified);

  double eval(double u) const { return impl_->g(u); }
  double d1(double u) const { return impl_->d1(u); }
  double d2(double u) const { return impl_->d2(u); }
  double d3(double u) const { return impl_->d3(u); }
  bool monotone_certified() const { return impl_->certified; }
  const std::string& name() const { return impl_->name; }

  /// True if G is identically constant (all derivative evaluators vanish).
  bool is_constant() const { return impl_->constant; }

 private:
  struct Impl {
    std::string name;
    Fn g, d1, d2, d3;
    bool certified = false;
    bool constant = false;
  };
  std::shared_ptr<const Impl> impl_;
  friend VorticityProfile rigid_preset(double);
  friend VorticityProfile constant_profile(double);
};

/// G = -2 omega0 (rigid rotation).
VorticityProfile rigid_preset(double omega0);
/// G = value everywhere. value = 0 gives the degenerate irrotational body.
VorticityProfile constant_profile(double value);
/// G(u) = offset + slope * u with slope >= 0.
VorticityProfile affine_preset(double offset, double slope);

/// Monotone piecewise cubic through (u_i, g_i) (Fritsch-Carlson slopes),
/// linear extrapolation outside the table. Throws DomainError when the
/// data are not non-decreasing.
VorticityProfile tabulated_profile(std::vector<double> u, std::vector<double> g);
/// Two-column CSV (u, G). A non-numeric first line is taken as a header.
VorticityProfile load_profile_csv(const std::string& path);

/// Spot check of monotonicity: samples G and G' on `samples` points of [lo, hi].
bool check_monotone(const VorticityProfile& G, double lo, double hi, int samples = 1000);

}  // namespace tidaleq
