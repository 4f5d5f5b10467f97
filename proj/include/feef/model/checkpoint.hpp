#ifndef FEEF_MODEL_CHECKPOINT_HPP
#define FEEF_MODEL_CHECKPOINT_HPP

#include <iosfwd>

#include "feef/model/world_model.hpp"

namespace feef::model {

/// Current checkpoint format version. See docs/checkpoint_format.md.
inline constexpr int kCheckpointVersion = 1;

/// Text dump of every parameter and normaliser statistic, using hex floats so a load is bit-exact.
void save_checkpoint(const WorldModel& model, std::ostream& out);

/// Throws std::runtime_error on a malformed stream or an unsupported version.
WorldModel load_checkpoint(std::istream& in);

} // namespace feef::model

#endif
