#include "asense/parallel.hpp"

namespace asense {

unsigned resolveThreads(unsigned requested) noexcept {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

}  // namespace asense
