#pragma once

#include "ctrlobs/errors.hpp"
#include "ctrlobs/generate.hpp"
#include "ctrlobs/io.hpp"
#include "ctrlobs/matching.hpp"
#include "ctrlobs/oracle.hpp"
#include "ctrlobs/placement.hpp"
#include "ctrlobs/structure.hpp"
#include "ctrlobs/verify.hpp"
