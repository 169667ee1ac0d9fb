#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siglab/operators.hpp"

namespace siglab {

namespace detail {
struct SampleData;
}

/// One sampled operator of an operator path.  A sample acts as the
/// identity outside an active window of the ambient basis and as a product
/// of stored factors (sparse, dense, polynomial-in-a-matrix or
/// linear-to-identity) inside it; factored storage keeps the large path
/// samples matrix-free.  Samples are cheap shared handles: builders hand
/// the same object to both sides of a segment junction, which is how
/// "endpoints agree exactly (same matrix)" is meant and checked.
class SampleOperator {
 public:
  SampleOperator() = default;
  explicit SampleOperator(std::shared_ptr<const detail::SampleData> d)
      : data_(std::move(d)) {}

  /// Identity on an ambient basis of the given size.
  static SampleOperator identity(int dim);
  /// Sample acting by the given exact block on [offset, offset+rows) and
  /// by the identity elsewhere; the exact matrix is retained.
  static SampleOperator exact(int dim, int offset, SparseMat block);

  bool valid() const { return data_ != nullptr; }
  int dim() const;
  int offset() const;
  int window() const;

  /// Certified lower bound for the smallest singular value: direct
  /// estimate for one-factor samples, product of per-factor bounds for
  /// factored ones; 1 outside the active window is folded in.
  double min_singular_value(double tol = 1e-6) const;

  /// Operator-norm estimate of the difference to another sample on the
  /// same ambient basis (power iteration, matrix-free).
  double distance_to(const SampleOperator& o, double tol = 1e-3) const;

  /// True when both handles carry literally the same stored data.
  bool shares_data(const SampleOperator& o) const {
    return data_ != nullptr && data_ == o.data_;
  }

  /// Exact active block when one is attached (e.g. rational path legs).
  const SparseMat* exact_block() const;

  const std::shared_ptr<const detail::SampleData>& data() const {
    return data_;
  }

 private:
  std::shared_ptr<const detail::SampleData> data_;
};

/// One closed-form leg of a path: a family of samples over [t0, t1]
/// together with an exact squared-propagation bound valid for every
/// sample of the leg (support arithmetic over the ambient locations).
struct PathSegment {
  double t0 = 0.0;
  double t1 = 1.0;
  std::string description;
  std::function<SampleOperator(double)> at;
  Q prop2 = 0;
};

struct PathSample {
  double t = 0.0;
  double min_sv = 0.0;
  double prop = 0.0;  // sqrt of the segment's exact bound
};

struct SegmentCertificate {
  std::string description;
  double t0 = 0.0, t1 = 0.0;
  int samples = 0;
  double min_singular_value = 0.0;
  Q propagation2 = 0;
  double propagation = 0.0;
  double continuity = 0.0;      // max adjacent-sample gap inside the leg
  bool junction_shared = true;  // start sample identical to previous end
  double junction_gap = 0.0;    // 0 when shared
};

/// Sampled certificate: invertibility floor, per-leg propagation bounds
/// and the continuity modulus.  Certification is sampled, not
/// interval-verified; all numbers are deterministic for fixed inputs.
struct PathCertificate {
  double min_singular_value = 0.0;
  double continuity_modulus = 0.0;
  bool junctions_exact = true;
  std::vector<SegmentCertificate> segments;
  std::vector<PathSample> samples;
};

/// Piecewise family of invertibles over a common ambient basis.  Builders
/// that certify at construction attach their certificate.
struct OperatorPath {
  ModulePtr ambient;
  std::vector<PathSegment> segments;
  std::optional<PathCertificate> certificate;

  double start_t() const { return segments.empty() ? 0.0 : segments.front().t0; }
  double end_t() const { return segments.empty() ? 0.0 : segments.back().t1; }
};

/// Samples every segment at `samples_per_segment` equispaced times
/// (inclusive endpoints; a degenerate segment is sampled once), estimates
/// each sample's smallest singular value, the continuity modulus (max
/// adjacent-sample operator-norm gap, junction pairs included) and
/// whether all junctions are exact (shared samples).  Reporting only; no
/// exceptions.
PathCertificate certify_path(const OperatorPath& path,
                             int samples_per_segment = 32,
                             double tol = 1e-6);

/// Single-segment constant path (used by tests and as the J = 0
/// degenerate local index path).
OperatorPath constant_path(ModulePtr ambient, SampleOperator sample,
                           const std::string& description);

}  // namespace siglab
