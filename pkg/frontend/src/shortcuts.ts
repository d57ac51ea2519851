// Keyboard shortcuts for throughput: y/n/x answer the first open A1
// question, s/p and d/i set the A2 labels, Enter submits.

import type { Protocol } from './types.js'
import { A1_FIELDS, type Answers } from './view.js'

export interface ShortcutAction {
  kind: 'answer' | 'submit'
  field?: string
  value?: string
}

export function shortcutFor(
  key: string,
  protocol: Protocol,
  answers: Answers,
): ShortcutAction | null {
  if (key === 'Enter') return { kind: 'submit' }
  const lower = key.toLowerCase()
  if (protocol === 'A1') {
    const value = { y: 'yes', n: 'no', x: 'none' }[lower]
    if (!value) return null
    const open = A1_FIELDS.find((field) => answers[field] === undefined)
    if (!open) return null
    return { kind: 'answer', field: open, value }
  }
  const mapping: Record<string, [string, string]> = {
    s: ['plurality_label', 'singular'],
    p: ['plurality_label', 'plural'],
    d: ['definiteness_label', 'definite'],
    i: ['definiteness_label', 'indefinite'],
  }
  const hit = mapping[lower]
  if (!hit) return null
  return { kind: 'answer', field: hit[0], value: hit[1] }
}
