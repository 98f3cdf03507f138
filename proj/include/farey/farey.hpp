#pragma once
// Convenience umbrella: pulls in the whole library.

#include "farey/config.hpp"
#include "farey/exact.hpp"
#include "farey/heights.hpp"
#include "farey/io.hpp"
#include "farey/numtheory.hpp"
#include "farey/parallel.hpp"
#include "farey/polymer.hpp"
#include "farey/thermo.hpp"
#include "farey/transfer.hpp"
#include "farey/verify.hpp"
#include "farey/walsh.hpp"
