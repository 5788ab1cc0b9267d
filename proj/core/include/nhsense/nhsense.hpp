#pragma once

#include "nhsense/dynamics.hpp"
#include "nhsense/errors.hpp"
#include "nhsense/greens.hpp"
#include "nhsense/nonmarkov.hpp"
#include "nhsense/nonpert.hpp"
#include "nhsense/oracle.hpp"
#include "nhsense/params.hpp"
#include "nhsense/sensing.hpp"
