#include "wigner/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wigner {

unsigned thread_count() {
    if (const char* env = std::getenv("WIGNER_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return unsigned(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wigner
