#include "pentaver/functions.hpp"

namespace pentaver {

// Placeholder until the generator lands; the committed polynomial loader
// replaces this.
const SparsePoly& dimred_poly() {
    static SparsePoly p;
    return p;
}

}  // namespace pentaver
