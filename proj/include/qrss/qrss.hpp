#pragma once

#include "qrss/error.hpp"
#include "qrss/field_shamir.hpp"
#include "qrss/image.hpp"
#include "qrss/image_io.hpp"
#include "qrss/metrics.hpp"
#include "qrss/numtheory.hpp"
#include "qrss/qrss_scheme.hpp"
#include "qrss/splitmix.hpp"
#include "qrss/thienlin.hpp"
#include "qrss/worked_example.hpp"
