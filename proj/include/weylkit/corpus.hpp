#pragma once

#include <string>
#include <vector>

#include "weylkit/cocycle.hpp"
#include "weylkit/groupoid.hpp"

namespace weylkit {

/// A groupoid with cocycle, grading and marked subgroupoid.
struct CorpusEntry {
  std::string name;
  FiniteGroupoid g;
  TwoCocycle omega;
  Grading c;
  Subgroupoid s;
};

/// Z2 x Z2 with w((a,b),(c,d)) = bc/2, c(a,b) = b, S = Z2 x {0}.
CorpusEntry corpus_pauli();
/// Same group, grading and S with the zero cocycle.
CorpusEntry corpus_z2z2();
/// S3 on cycle-notation ids, S = A3; the grading is the sign when `signed_grading`.
CorpusEntry corpus_s3(bool signed_grading = true);
/// Z4 x| Z2 by inversion, c = second coordinate, S = Z4.
CorpusEntry corpus_d4();
/// Quaternions "1","-1","i",...; c vanishes on <i>, S = <i>.
CorpusEntry corpus_q8();
/// Z2 times the pair groupoid on two units, c = 0, S = Iso.
CorpusEntry corpus_z2_r2();
/// Z_n^2 with the rotation cocycle p k h'/n, c = k, S = Z_n x {0}.
CorpusEntry corpus_rotation(int n, int p);

/// Named lookup: pauli, z2z2, s3, s3_ungraded, d4, q8, z2xr2, rotation_<n>_<p>.
CorpusEntry corpus_by_name(const std::string& name);

/// pauli, z2z2, s3, d4, q8, z2xr2 and rotation(n,p) for n <= max_rotation.
std::vector<CorpusEntry> standard_corpus(int max_rotation = 8);

}  // namespace weylkit
