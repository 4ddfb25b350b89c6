/* Compiled as C to keep the public header C-clean. */
#include <hhelm/hhelm.h>

int hhelm_c_header_check(void) {
  hhelm_pipeline_config config;
  hhelm_solver solver;
  hhelm_pipeline_config_default(&config);
  if (hhelm_pipeline_config_validate(&config) != HHELM_OK) return 1;
  if (hhelm_parse_solver("lu", &solver) != HHELM_OK || solver != HHELM_SOLVER_LU) return 2;
  return 0;
}
