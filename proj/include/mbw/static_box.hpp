#pragma once

// Particle in a box with fixed walls at 0 and L.

namespace mbw {

struct BoxEigenstate {
  int n;
  double length;
};

/// sqrt(2/L) sin(n pi y / L) inside the box, 0 outside.
double psi_static(int n, double y, double length);

/// (n pi / L)^2
double energy_static(int n, double length);

}  // namespace mbw
