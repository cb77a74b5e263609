#ifndef WCO_CERTIFICATE_HPP
#define WCO_CERTIFICATE_HPP

#include <map>
#include <string>

namespace wco {

enum class CertificateKind {
  NotWeaklyHypercyclic,
  WeaklyClosedOrbit,
  ClosedRange,
  LambdaHyponormal,
  NoLambdaExists,
};

// What the verified hypotheses cover: the finite system exactly, a finite
// prefix window of an infinite system, or a window plus a user-asserted
// tail bound.
enum class CertificateScope {
  ExactFinite,
  PrefixEvidence,
  FullWithTailBound,
};

// Machine-checkable record: which result fired, with the numeric witnesses
// needed to replay the check. Indices in witnesses are 1-based.
struct Certificate {
  CertificateKind kind;
  std::string theorem;  // tag of the result whose hypotheses were verified
  std::map<std::string, double> witnesses;
  CertificateScope scope = CertificateScope::ExactFinite;
  std::string note;
};

const char* to_string(CertificateKind k);
const char* to_string(CertificateScope s);
CertificateKind certificate_kind_from_string(const std::string& s);
CertificateScope certificate_scope_from_string(const std::string& s);

}  // namespace wco

#endif
