/*@ ghost
  @ /@ requires valid_str(s);
  @  @ requires *s != '\0';
  @  @ assigns \nothing;
  @  @ ensures \result == s + 1;
  @  @ ensures valid_str(\result);
  @  @ ensures strlen(\result) == strlen(s) - 1;
  @  @/
  @ char *str_next(char *s)
  @ {
  @   return s + 1;
  @ }
  @*/

/*@ ghost
  @ /@ requires valid_str(s);
  @  @ assigns \nothing;
  @  @ ensures \result != 0 <==> strlen(s) == 0;
  @  @/
  @ int str_empty(char *s)
  @ {
  @   return *s == '\0';
  @ }
  @*/

/*@ ghost
  @ /@ requires valid_str(s);
  @  @ assigns \nothing;
  @  @ ensures \result == s + strlen(s);
  @  @ ensures *\result == '\0';
  @  @/
  @ char *str_end(char *s)
  @ {
  @   char *p = s;
  @   /@ loop invariant valid_str(p);
  @    @ loop invariant \base_addr(p) == \base_addr(s);
  @    @ loop invariant s <= p;
  @    @ loop invariant strlen(s) == p - s + strlen(p);
  @    @ loop variant strlen(p);
  @    @/
  @   while (*p != '\0')
  @     p = str_next(p);
  @   return p;
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures \valid(s + strlen(s)) && s[strlen(s)] == '\0';
  @  @/
  @ void strlen_at_end(char *s)
  @ {
  @   if (*s != '\0')
  @     strlen_at_end(s + 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < strlen(s);
  @  @ decreases i;
  @  @ ensures s[i] != '\0';
  @  @/
  @ void strlen_before_end(char *s, size_t i)
  @ {
  @   if (i > 0)
  @     strlen_before_end(s + 1, i - 1);
  @ }
  @*/

/*@ ghost
  @ /@ requires valid_str(s);
  @  @ requires strlen(s) <= 1000000;
  @  @ decreases strlen(s);
  @  @ assigns \nothing;
  @  @ ensures \result == strlen(s);
  @  @/
  @ size_t strlen_rec(char *s)
  @ {
  @   if (str_empty(s))
  @     return 0;
  @   return 1 + strlen_rec(s + 1);
  @ }
  @*/

/*@ requires valid_str(s);
  @ assigns \nothing;
  @ ensures \result == strlen(s);
  @ ensures s[\result] == '\0';
  @*/
size_t strlen(const char *s)
{
	const char *sc;

	/*@ loop invariant valid_str(sc);
	  @ loop invariant \base_addr(sc) == \base_addr(s);
	  @ loop invariant s <= sc;
	  @ loop invariant strlen(s) == sc - s + strlen(sc);
	  @ loop variant strlen(sc);
	  @*/
	for (sc = s; *sc != '\0'; ++sc)
		/* nothing */;
	return sc - s;
}
