#pragma once

#include "gvns/fields.hpp"

namespace gvns {

// rho(x_i) = dv^d sum_j f(x_i, v_j), j(x_i) = dv^d sum_j v_j f(x_i, v_j).
MomentFields compute_moments(const DistPhysical& f);

// dx^d sum_i rho(x_i); shares the summation tree of compute_moments.
double total_mass(const DistPhysical& f);
double total_mass(const PhaseGrid& g, const MomentFields& m);

// Fraction of iint |f| carried by cells with some |v_a| >= (1 - shell) Lv.
double boundary_mass_fraction(const DistPhysical& f, double shell = 0.1);

struct SupportInfo {
  double radius = 0.0;
  bool empty = true;
};

// max |v| over cells with |f| > 1e-12 * iint |f|.
SupportInfo support_radius(const DistPhysical& f, double rel_threshold = 1e-12);

// N_q(f) = sup (1 + |v|^q) f and M_a f = iint |v|^a f.
double sup_weighted(const DistPhysical& f, double q);
double velocity_moment(const DistPhysical& f, double a);

}  // namespace gvns
