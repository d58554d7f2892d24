#pragma once

#include "sncharlab/asymptotics.hpp"
#include "sncharlab/cache.hpp"
#include "sncharlab/character.hpp"
#include "sncharlab/errors.hpp"
#include "sncharlab/experiments.hpp"
#include "sncharlab/partition.hpp"
#include "sncharlab/sampler.hpp"
#include "sncharlab/series.hpp"
