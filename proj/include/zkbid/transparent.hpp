#pragma once

#include "zkbid/zk.hpp"

namespace zkbid::testing {

// Weak drop-in proof backend for tests: a proof is a nonce plus a keyed
// digest over the public inputs, so anyone holding the key id can forge one.
// It exercises the exact same plumbing as the pairing backend at a tiny
// fraction of the cost. Lives in its own library that only test targets
// link, and stays inert until this call.
void enable_transparent_backend();

}  // namespace zkbid::testing
