#include "projlat/types.hpp"

namespace projlat {

void ToleranceConfig::validate() const {
  if (!(eig_cluster > 0.0) || !(rank_tol > 0.0) || !(psd_tol > 0.0) ||
      !(order_tol > 0.0)) {
    throw ConfigError("tolerances must be strictly positive");
  }
  if (eig_cluster < rank_tol) {
    throw ConfigError("eig_cluster must be at least rank_tol");
  }
}

}  // namespace projlat
