#pragma once

namespace rsscflp {

// Effective worker count: an explicit positive request wins, otherwise the
// RSSCFLP_THREADS environment variable, otherwise 1.
int resolve_threads(int configured);

}  // namespace rsscflp
