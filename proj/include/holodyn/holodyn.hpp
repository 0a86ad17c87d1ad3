#pragma once

// Convenience umbrella: pulls in the whole library.

#include "holodyn/config.hpp"
#include "holodyn/decomposition.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/generator.hpp"
#include "holodyn/linalg.hpp"
#include "holodyn/models.hpp"
#include "holodyn/propagation.hpp"
#include "holodyn/report.hpp"
