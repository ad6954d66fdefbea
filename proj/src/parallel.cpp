#include "mobanon/parallel.hpp"

namespace mobanon {

unsigned resolveThreadCount(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace mobanon
