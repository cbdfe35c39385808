#pragma once

#include <string>

#include "ihcalc/perversity.hpp"
#include "ihcalc/strata.hpp"

namespace ih {

// New filtered complexes from old, each with the induced filtration.

// Open-cone filtration: apex at level 0, original levels shifted up by one,
// formal dimension n+1.
FilteredComplex cone(const FilteredComplex& X, const std::string& apex = "w");

// Double cone with two apexes; no simplex contains both.
FilteredComplex suspension(const FilteredComplex& X, const std::string& apex_plus = "w+",
                           const std::string& apex_minus = "w-");

// Staircase product with a subdivided interval (m >= 1 segments) or a
// triangulated circle (m >= 3 vertices). Levels shift by one and the formal
// dimension grows by one, so codim(S x M) = codim S.
FilteredComplex product_interval(const FilteredComplex& X, int m);
FilteredComplex product_circle(const FilteredComplex& X, int m);

// Barycentric subdivision: vertices are the simplices of X, at the level of
// the simplex; simplices are flags. Underlying space and filtration levels
// are unchanged.
FilteredComplex barycentric_subdivide(const FilteredComplex& X);

FilteredComplex disjoint_union(const FilteredComplex& X, const FilteredComplex& Y);

// --- perversity transport ------------------------------------------------------

// The constructions above carry perversities along: each derived stratum
// takes the value of the stratum it came from. These helpers recompute that
// assignment on the derived complex.

Perversity cone_perversity(const Space& cone_space, const Space& base, const Perversity& p,
                           int apex_value);
// Suspension: both apex strata get explicit values.
Perversity suspension_perversity(const Space& susp, const Space& base, const Perversity& p,
                                 int plus_value, int minus_value);
Perversity product_perversity(const Space& prod, const Space& base, const Perversity& p);
Perversity subdivision_perversity(const Space& sd, const Space& base, const Perversity& p);

// Map a subcomplex of X to the corresponding subcomplex of sd(X) (flags of
// simplices inside the subset).
SimplexSubset subdivide_subset(const Space& sd, const Space& base, const SimplexSubset& sub);

}  // namespace ih
