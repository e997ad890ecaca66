#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "octo/solvers.hpp"

namespace octo {

struct CensusOptions {
    std::uint64_t cap = 6561;  // bound on q^8; the default admits q in {2, 3}
    int workers = 0;           // 0: library default
    SolveOptions solve;
};

/// Result of exhaustively enumerating the image of
/// (X, Y) -> A1 X^{k1} + A2 Y^{k2} over a fixed small field.
struct CensusReport {
    std::uint64_t q = 0;
    std::int64_t k1 = 2, k2 = 2;
    std::string pair_desc;
    std::uint64_t image_size = 0;
    std::uint64_t total = 0;  // q^8
    bool proper_subset = false;
    std::array<std::string, 8> observed_mask;  // constraints seen on the image
    double elapsed_seconds = 0.0;
    std::vector<Octonion> non_image_samples;  // at most 16
};

/// All q^8 octonions over F_q = F_{p^m} in canonical order (throws CapExceeded
/// past `cap`).
std::vector<Octonion> enumerate_octonions(std::int64_t p, int m, std::uint64_t cap);

/// Exact image census via deduplicated power images and a pairwise-sum
/// kernel. A1, A2 must be defined over F_{p^m}.
CensusReport image_census(const Octonion& A1, const Octonion& A2, std::int64_t k1,
                          std::int64_t k2, std::int64_t p, int m,
                          const CensusOptions& opt = {});

/// Reference census: the plain double loop over all (X, Y). Only sensible for
/// q = 2; kept as the oracle for the two-phase kernel.
std::vector<std::uint8_t> image_census_naive(const Octonion& A1, const Octonion& A2,
                                             std::int64_t k1, std::int64_t k2, std::int64_t p,
                                             int m, const CensusOptions& opt = {});

/// The marked-image bitmap behind image_census, exposed for equivalence
/// tests; `parallel` selects the OpenMP kernel or the serial reference.
std::vector<std::uint8_t> image_census_bitmap(const Octonion& A1, const Octonion& A2,
                                              std::int64_t k1, std::int64_t k2, std::int64_t p,
                                              int m, bool parallel,
                                              const CensusOptions& opt = {});

struct FamilyCensusRow {
    int family = 0;
    std::string params;
    std::uint64_t image_size = 0;
    std::uint64_t total = 0;
    bool proper_subset = false;
    bool mask_respected = false;  // every image point satisfies the family mask
};

/// Census every non-surjective family shape over F_q: each free parameter
/// sweeps the whole field (nonzero where the shape demands it).
std::vector<FamilyCensusRow> census_nonsurjective_families(std::int64_t p, int m, std::int64_t k1,
                                                     std::int64_t k2,
                                                     const CensusOptions& opt = {});

/// The eight non-surjective pair shapes with a concrete parameter choice;
/// used by the family sweep and the acceptance suite. Parameters not pinned
/// by the shape are taken from `values` in declaration order.
std::pair<Octonion, Octonion> nonsurjective_family_pair(int family,
                                                  const std::vector<FieldElement>& values,
                                                  std::int64_t p, int m);

/// Number of free parameters of each non-surjective family shape, with
/// per-parameter nonzero requirements.
std::vector<bool> nonsurjective_family_param_nonzero(int family);

}  // namespace octo
