#ifndef SPOTCAST_MODEL_IO_HPP_
#define SPOTCAST_MODEL_IO_HPP_

#include <string>

#include <json.hpp>

#include "spotcast/estimator.hpp"

namespace spotcast {

// Versioned model container. Only parameters and sample metadata are
// stored; residuals and fitted sigmas are recomputed from the data when
// needed. Coefficient vectors are stored sparsely as [index, value] pairs.
inline constexpr const char* kModelFormat = "spotcast-model/1";

nlohmann::json model_to_json(const ModelFit& m);
ModelFit model_from_json(const nlohmann::json& j);

void save_model(const ModelFit& m, const std::string& path);
ModelFit load_model(const std::string& path);

}  // namespace spotcast

#endif  // SPOTCAST_MODEL_IO_HPP_
