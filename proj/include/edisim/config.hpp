#ifndef EDISIM_CONFIG_HPP
#define EDISIM_CONFIG_HPP

#include <array>
#include <string>

#include "edisim/search.hpp"

namespace edisim {

// Named hyperparameter presets. "newsela": uniform exponents, every
// threshold 1.25. "wikilarge": alpha 0.5, beta 1.0, gamma 0.25, delta 1.0;
// thresholds 1.25 (removal, reordering), 0.8 (substitution), 5.0
// (extraction). Unknown names raise ConfigError.
PipelineConfig profile(const std::string& name);

// "key = value" lines, '#' comments, blank lines ignored. Applied on top of
// whatever is already in `config`; later lines win.
void apply_config_file(PipelineConfig& config, const std::string& path);

// One override, e.g. apply_setting(cfg, "alpha", "0.5"). Unknown keys and
// unparseable values raise ConfigError. Keys: alpha beta gamma delta tau
// min_length entity_offset r_removal r_extraction r_reordering
// r_substitution r_all max_iterations revisit_guard k_neighbors
// sub_similarity_threshold phrase_tags reorder_scope lm_order lm_weights
// sari_delete.
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value);

// "w_full,w_proj,w_uniform": three nonnegative reals summing to 1 with a
// positive uniform stage.
std::array<double, 3> parse_lm_weights(const std::string& value);

std::string config_json(const PipelineConfig& config);

} // namespace edisim

#endif
