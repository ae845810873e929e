#pragma once
#ifndef CFPROB_CFPROB_HPP
#define CFPROB_CFPROB_HPP

#include <cfprob/checker.hpp>
#include <cfprob/cpm.hpp>
#include <cfprob/errors.hpp>
#include <cfprob/format.hpp>
#include <cfprob/imaging.hpp>
#include <cfprob/logic.hpp>
#include <cfprob/model_file.hpp>
#include <cfprob/possibility.hpp>
#include <cfprob/simulation.hpp>
#include <cfprob/worlds.hpp>

#endif  // CFPROB_CFPROB_HPP
