#include <math.h>
#include <stdio.h>
#include <string.h>

#include "ideal_coxeter.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  IcPolyhedron *p3 = NULL;
  CHECK(ic_polyhedron_catalog("P3", &p3) == IC_STATUS_OK);
  bool valid = false;
  CHECK(ic_validate(p3, &valid) == IC_STATUS_OK && valid);

  uint64_t series[4];
  size_t len = 0;
  CHECK(ic_oracle_growth(p3, 3, series, 4, &len) == IC_STATUS_OK && len == 4);
  CHECK(series[0] == 1 && series[1] == 4 && series[2] == 12 && series[3] == 30);

  IcGrowthRate rate;
  CHECK(ic_growth_rate(p3, 1e-10, &rate) == IC_STATUS_OK);
  CHECK(rate.perron && rate.tau_lo <= rate.tau_hi);

  IcVolume vol;
  CHECK(ic_volume("P3", 1e-12, &vol) == IC_STATUS_OK);
  CHECK(fabs(vol.value - 1.0149416064096536) < 1e-11);

  IcPolyhedron *bad = NULL;
  CHECK(ic_polyhedron_parse("faces two\n", &bad) == IC_STATUS_PARSE && bad == NULL);
  CHECK(ic_last_error_message() != NULL && strlen(ic_last_error_message()) > 0);

  ic_polyhedron_free(p3);
  puts("ok");
  return 0;
}
