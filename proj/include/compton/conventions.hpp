#pragma once

#include <string>

namespace compton {

/// The three binary sign choices the channel-exchange closed form depends on.
///
/// Defaults: eps^{0123} = +1, the T2 prefactor carries '-' for an up-spin
/// electron, and the reference RCP vector is (0, -1, -i, 0)/sqrt(2).
/// `calibrate()` checks which assignments reproduce the back-to-back anchor.
struct Conventions {
  int levi_civita_sign = +1;  ///< eps^{0123}
  int t2_up_sign = -1;        ///< sign in front of 8i for Up; Down gets the opposite
  int rcp_x_sign = -1;        ///< x-component sign of the reference RCP vector; LCP gets the opposite

  friend bool operator==(const Conventions&, const Conventions&) = default;

  std::string describe() const
  {
    return std::string("eps^{0123}=") + (levi_civita_sign > 0 ? "+1" : "-1") +
           ", T2(up)=" + (t2_up_sign > 0 ? "+8i" : "-8i") +
           ", eps_R=(0," + (rcp_x_sign > 0 ? "+1" : "-1") + ",-i,0)/sqrt2";
  }
};

}  // namespace compton
