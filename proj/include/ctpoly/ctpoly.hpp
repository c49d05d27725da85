/*!
  \file ctpoly.hpp
  \brief Umbrella header
*/

#pragma once

#include "charge_model.hpp"
#include "gate_library.hpp"
#include "threshold_synth.hpp"
#include "netlist.hpp"
#include "simulator.hpp"
#include "msa_block.hpp"
#include "ft_runtime.hpp"
