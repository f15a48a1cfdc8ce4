#pragma once

#include "mifx/dataset.hpp"
#include "mifx/extraction.hpp"

namespace mifx {

// Top-t unit eigenvectors of the sample covariance, descending eigenvalue
// order; sign fixed so the largest-magnitude entry is positive.
ProjectionMatrix pca_fit(const Dataset& x, int t);

// Fisher discriminant directions from S_b w = lambda (S_w + eps I) w,
// L2-normalized; at most C-1 of them.
ProjectionMatrix lda_fit(const Dataset& x, int t);

} // namespace mifx
