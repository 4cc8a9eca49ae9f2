#include "pudp/monad.hpp"

namespace pudp {

const char* kind_name(MonadKind k) {
  switch (k) {
    case MonadKind::identity: return "identity";
    case MonadKind::powerset: return "powerset";
    case MonadKind::interval: return "interval";
    case MonadKind::distribution: return "distribution";
  }
  return "?";
}

std::optional<MonadKind> kind_from_name(std::string_view name) {
  if (name == "identity") return MonadKind::identity;
  if (name == "powerset") return MonadKind::powerset;
  if (name == "interval") return MonadKind::interval;
  if (name == "distribution") return MonadKind::distribution;
  return std::nullopt;
}

}  // namespace pudp
