/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases 0;
  @  @ ensures s <= strchrnul(s, c) <= s + strlen(s);
  @  @/
  @ void strchrnul_in_range(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_in_range(s + 1, c);
  @ }
  @*/
