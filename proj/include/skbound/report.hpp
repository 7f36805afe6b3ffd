#ifndef SKBOUND_REPORT_HPP
#define SKBOUND_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skbound/prob.hpp"

namespace skb {

enum class CertificateKind { ClosedForm, Envelope, SearchBest, Oracle };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::ClosedForm: return "closed-form";
    case CertificateKind::Envelope: return "envelope";
    case CertificateKind::SearchBest: return "search-best";
    case CertificateKind::Oracle: return "oracle";
  }
  return "?";
}

// Convex decomposition P = sum_j w_j Q_j plus the closed-form parameters
// that produced it (x0, x1, lambda, alpha, r, t, s, ell, omega as applicable).
struct DecompositionWitness {
  std::vector<double> weights;
  std::vector<JointPmf> components;  // share one alphabet, usually (X,Y)
  std::map<std::string, double> params;
};

struct BoundReport {
  double value = 0.0;
  CertificateKind kind = CertificateKind::SearchBest;
  std::optional<DecompositionWitness> witness;
  std::optional<ConditionalPmf> kernel_witness;
  std::map<std::string, double> residuals;
  std::vector<double> trace;  // per-restart best values
  std::vector<std::string> notes;
};

}  // namespace skb

#endif
