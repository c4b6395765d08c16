#ifndef GCLDPC_GCLDPC_HPP
#define GCLDPC_GCLDPC_HPP

// Graph-cover constructions for LDPC convolutional codes: GF(2) sparse
// primitives, GCC1/GCC2 lifting, Tanner and JFZ unwrapping, block and
// pipeline sum-product decoding, Monte-Carlo BER harness, and cycle /
// pseudo-codeword analysis.

#include "gf2.hpp"
#include "poly.hpp"
#include "cover.hpp"
#include "convcode.hpp"
#include "unwrap.hpp"
#include "decode.hpp"
#include "analysis.hpp"
#include "sim.hpp"
#include "rng.hpp"
#include "io.hpp"

#endif  // GCLDPC_GCLDPC_HPP
