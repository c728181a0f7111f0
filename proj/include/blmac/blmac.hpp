#pragma once

#include <blmac/bench.hpp>
#include <blmac/blmac_core.hpp>
#include <blmac/errors.hpp>
#include <blmac/firdesign.hpp>
#include <blmac/io.hpp>
#include <blmac/machine.hpp>
#include <blmac/quantizer.hpp>
#include <blmac/rlc_codec.hpp>
#include <blmac/sdr.hpp>
