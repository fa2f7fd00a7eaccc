#include "wpsec/harness.hpp"

namespace wpsec::harness {

ChannelSet reference_fixture_channels() {
  using c = cplx;
  ChannelSet ch;
  ch.h_r1.resize(5);
  ch.h_r1 << c(-0.9693, 0.4571), c(-1.4266, 0.3548), c(-1.8713, 0.8418),
      c(0.7243, -0.0702), c(-0.9796, 0.3818);
  ch.H_r2.resize(5, 3);
  ch.H_r2 << c(0.5023, 0.9428), c(1.0247, -0.7866), c(-0.2742, 0.7717),
      c(0.0555, -0.5340), c(-1.5941, -0.4515), c(-0.1950, -0.1796),
      c(-0.7962, 0.9197), c(-1.0882, -0.2271), c(0.3783, -0.5202),
      c(1.0129, -1.0110), c(-1.1428, -0.3521), c(-0.0615, -0.2866),
      c(0.0170, 1.3779), c(-1.2486, -0.0870), c(0.1937, -1.1660);
  ch.f.resize(3);
  ch.f << c(-0.6791, 0.0424), c(0.5303, 0.1144), c(-0.5517, -0.0069);
  ch.h_d.resize(3);
  ch.h_d << c(-0.5039, 0.3520), c(0.4230, -1.1293), c(0.6480, 1.6376);
  ch.h_e_bar.resize(3);
  ch.h_e_bar << c(0.6417, -0.3991), c(0.1765, -0.9396), c(-0.5278, -0.8778);
  return ch;
}

}  // namespace wpsec::harness
