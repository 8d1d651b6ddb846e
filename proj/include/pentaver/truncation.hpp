#pragma once

#include "pentaver/report.hpp"
#include "pentaver/simplex.hpp"

namespace pentaver {

// Geometry of a Rogers simplex on a (2,2,t) face of a truncated cell:
// b is the face circumradius, r the orthogonal extension to the truncating
// sphere, s the in-face leg from the edge midpoint to the face circumcenter.
struct RogersFaceParams {
    Interval t;
    Interval b;
    Interval r;
    Interval s;
};

RogersFaceParams rogers_face_params(const Interval& t);

// Volume of the quoin over a (2,2,t) face (heights 2, so midpoint height 1),
// t in [2, 2*sqrt(2)].
Interval quoin_V(const Interval& t);

// d/dt of quoin_V: -2 sqrt(2) (8-t^2)^{3/2} / (3 (16-t^2)^2).
Interval quoin_Vt(const Interval& t);

// Generalized quoin volume for an origin edge of half-length a whose face
// has circumradius b = sqrt(a^2 + s^2) <= sqrt(2); s is the in-face leg.
Interval quoin_generalized(const Interval& a, const Interval& s);

// Volume of the spherical cap of the radius-sqrt(2) ball beyond the plane at
// distance a from the center.
Interval lens_volume(const Interval& a);

// One half of a pure Voronoi quad cluster: a tetrahedron whose sixth edge is
// the diagonal (>= 2 sqrt(2)); the acute flag records the sign of
// x1 + x2 - x6 for the dividing face.
struct QuadClusterHalf {
    EdgeLengths y;
    bool acute = true;
};

// A squashed symmetric pure Voronoi quad cluster: two copies of
// S = (2,2,2,y,y,d) glued along the diagonal d.
struct SymmetricSquashedQuad {
    Interval side;      // y in [4/2.51, 2.51]
    Interval diagonal;  // d in [2 sqrt(2), 2.51 sqrt(2)]
};

// Volume of the Voronoi cell of the origin restricted to the cone over the
// half, truncated at sqrt(2):
//   {p in cone(S) : |p| <= sqrt(2), 2 p.v_i <= x_i}.
// Assembled from the spherical sector, the circular-cone lens wedges along
// the origin edges, and a pair of quoins on every face whose circumradius
// is below sqrt(2).
Interval trunc_volume_half(const SquaredLengths& x);

// Truncated Voronoi score 4(-delta_oct vol + sol/3) of one half.
Interval trunc_score_simplex(const QuadClusterHalf& h);
Interval trunc_score_simplex_x(const SquaredLengths& x);

// Truncated Voronoi score of the whole symmetric cluster (two halves, the
// shared diagonal face carrying no Rogers simplices or quoins).
Interval trunc_score_symmetric(const SymmetricSquashedQuad& q);

// Named pieces of the decomposition of a truncated half, for the
// reconciliation tests: v = c + r + w and v = c + w' + q - f.
struct TruncAnatomy {
    Interval v;        // truncated cell volume
    Interval c;        // central spherical piece
    Interval rogers;   // sum of Rogers simplices
    Interval wedges;   // cone wedges between the extension planes
    Interval wprime;   // wedges extended to the facets
    Interval quoins;   // sum of quoins
    Interval flutes;   // sum of flutes
    Interval cones;    // t: ball sectors over the extended wedges
    Interval sol;      // solid angle of the half
};

TruncAnatomy trunc_anatomy(const SquaredLengths& x);

// Implicit derivative dy2/dy1 of the solid-angle constraint on a squashed
// half (heights 2, diagonal squared = b):
//   -(y1 (16-x2)(x2+b-x1)) / (y2 (16-x1)(x1+b-x2)).
Interval dy2_dy1(const Interval& x1, const Interval& x2, const Interval& b);

// Verifies by 2-D subdivision that the quoin perturbation polynomials p1 and
// p2 are positive for x1, x2 in [16/2.51^2, 2.51^2] at b = 8, together with
// the positivity of their coefficients of b on the same box.
VerificationReport quoin_monotonicity_check();

// The perturbation polynomials themselves (exposed for spot tests).
Interval quoin_p1(const Interval& x1, const Interval& x2, const Interval& b);
Interval quoin_p2(const Interval& x1, const Interval& x2, const Interval& b);

}  // namespace pentaver
