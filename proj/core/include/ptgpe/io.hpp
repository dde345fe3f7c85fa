#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptgpe/basis.hpp"
#include "ptgpe/bdg.hpp"
#include "ptgpe/continuation.hpp"
#include "ptgpe/dynamics.hpp"

namespace ptgpe {

/// GPE2 field dump: "GPE2", u32 n_x, u32 n_y, f64 x_min, x_max, y_min, y_max, then n_x*n_y
/// (f64 re, f64 im) pairs, row-major with y outer. All little-endian.
void write_gpe2(const std::string& path, const Wavefunction& psi);
void write_gpe2(const std::string& path, const RealField& field);
Wavefunction read_gpe2(const std::string& path);

/// Coefficient CSV, header `n_x,n_y,re,im`, one line per state in basis order.
void write_coefficients(const std::string& path, const CoeffVector& c, const BasisSet& basis);
/// Lines may come in any order; states missing from the file are zero.
CoeffVector read_coefficients(const std::string& path, const BasisSet& basis);

/// One row of `param,mu_re,mu_im,Ekin,Epot_re,Epot_im,Jphi,norm_residual`.
struct BranchRow {
  double param = 0.0;
  cdouble mu;
  double e_kin = 0.0;
  cdouble e_pot;
  double j_phi = 0.0;
  double norm_residual = 0.0;
};

BranchRow branch_row(double param, const StationaryState& state, const BasisSet& basis);
void write_branch_csv(const std::string& path, const std::vector<BranchRow>& rows);

/// `param,max_imag,n_unstable_modes`; failed points are written with empty fields.
void write_stability_csv(const std::string& path, const std::vector<StabilityPoint>& points);
/// `omega_re,omega_im`.
void write_omega_csv(const std::string& path, const std::vector<cdouble>& omegas);
/// `t,x,y,norm,overlap`.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

/// Writes `key=value` lines to a temporary file and renames it into place.
void write_manifest(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries);

/// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace ptgpe
