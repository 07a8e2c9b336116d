/* Minimal C client: canonical height of z^2 + t at the point 0 over F_2(t).
 *
 * Build (from the workspace root, after `cargo build -p ffheights-ffi`):
 *   cc crates/ffi/examples/demo.c -Icrates/ffi/include \
 *      -Ltarget/debug -lffheights_ffi -o demo
 *   LD_LIBRARY_PATH=target/debug ./demo
 */
#include <stdio.h>
#include "ffheights.h"

int main(void) {
  FfhField *field = NULL;
  FfhMap *map = NULL;
  FfhPoint *point = NULL;
  char *json = NULL;
  FfhStatus st;

  st = ffh_field_from_order(2, &field);
  if (st != FFH_STATUS_OK) goto fail;
  st = ffh_map_parse(field, "z^2+t", &map);
  if (st != FFH_STATUS_OK) goto fail;
  st = ffh_point_parse(field, "[0 : 1]", 1, &point);
  if (st != FFH_STATUS_OK) goto fail;
  st = ffh_canonical_height(map, point, "1/100", &json);
  if (st != FFH_STATUS_OK) goto fail;

  printf("canonical height estimate: %s\n", json);
  ffh_string_free(json);
  ffh_point_free(point);
  ffh_map_free(map);
  ffh_field_free(field);
  return 0;

fail: {
    char *msg = ffh_last_error_message();
    fprintf(stderr, "ffheights error %d: %s\n", (int)st, msg ? msg : "unknown");
    ffh_string_free(msg);
    return 1;
  }
}
