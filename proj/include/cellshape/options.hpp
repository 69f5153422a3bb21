#pragma once

#include "cellshape/srvf.hpp"

#include <string>
#include <string_view>

namespace cellshape {

/// S1: Grassmann (e, f) model, bending only. S2: square-root velocity model.
enum class Space { S1, S2 };

/// Fixed: canonical start point only. Reparam: search over start-point shifts.
enum class Method { Fixed, Reparam };

struct DistanceOptions {
    Space space = Space::S2;
    Method method = Method::Fixed;
    std::size_t shift_step = 5;
    srvf::RotationMode fixed_rotation = srvf::RotationMode::FlipOnly;
    srvf::RotationMode reparam_rotation = srvf::RotationMode::Procrustes;
    bool use_dp = false;
};

std::string_view to_string(Space s);
std::string_view to_string(Method m);
std::string_view to_string(srvf::RotationMode m);

/// Case-insensitive; throw InputError on unknown names.
Space parse_space(std::string_view s);
Method parse_method(std::string_view s);
srvf::RotationMode parse_rotation(std::string_view s);

}  // namespace cellshape
