#include <stdio.h>
#include <string.h>
#include "bidgame.h"

int main(void) {
    BgEngine *e = bg_engine_new();
    uint32_t one, zero;
    char *s = NULL;
    if (bg_parse(e, "1", &one) != BG_STATUS_OK) return 1;
    if (bg_parse(e, "0", &zero) != BG_STATUS_OK) return 2;
    if (bg_outcome_vector(e, one, 2, &s) != BG_STATUS_OK || strcmp(s, "LLLLLL") != 0) return 3;
    bg_string_free(s);
    if (bg_outcome_vector(e, zero, 1, &s) != BG_STATUS_OK || strcmp(s, "RRLL") != 0) return 4;
    bg_string_free(s);
    if (bg_parse(e, "{0|", &one) != BG_STATUS_SYNTAX || bg_last_error() == NULL) return 5;
    bg_engine_free(e);
    puts("ok");
    return 0;
}
