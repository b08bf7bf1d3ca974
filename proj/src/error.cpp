#include "aspectminer/error.hpp"

namespace aspectminer {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::CyclicInheritance: return "CyclicInheritance";
    case Errc::UnknownType: return "UnknownType";
    case Errc::UnknownConcept: return "UnknownConcept";
    case Errc::EmptyTraceSet: return "EmptyTraceSet";
    case Errc::UnknownMethod: return "UnknownMethod";
    case Errc::EmptySeed: return "EmptySeed";
    case Errc::UnknownMember: return "UnknownMember";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& detail, std::optional<std::size_t> line) {
  std::string msg = to_string(code);
  if (line) msg += " (line " + std::to_string(*line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(Errc code, std::string detail, std::optional<std::size_t> line)
    : std::runtime_error(compose(code, detail, line)),
      code_(code),
      detail_(std::move(detail)),
      line_(line) {}

int exit_status(const std::exception& e) noexcept {
  if (dynamic_cast<const Error*>(&e)) return 1;
  if (dynamic_cast<const std::logic_error*>(&e)) return 2;
  return 1;
}

}  // namespace aspectminer
